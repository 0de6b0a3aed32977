#include <lgraph/rational.hpp>

#include <cctype>
#include <string>

namespace lgraph {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Integer pow10(long n)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw parse_error("empty rational");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw parse_error("malformed rational '" + std::string(text) + "'");
        Integer d{std::string(den), 10};
        if (d == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
        value = Rational(Integer(std::string(num), 10), d);
        value.canonicalize();
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6)
                throw parse_error("malformed exponent in '" + std::string(text) + "'");
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            auto whole = s.substr(0, dot);
            auto frac = s.substr(dot + 1);
            if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
                (whole.empty() && frac.empty()))
                throw parse_error("malformed decimal '" + std::string(text) + "'");
            digits = std::string(whole) + std::string(frac);
            exponent -= static_cast<long>(frac.size());
        } else {
            if (!all_digits(s)) throw parse_error("malformed rational '" + std::string(text) + "'");
            digits = std::string(s);
        }
        Integer mantissa(digits, 10);
        if (exponent >= 0) {
            value = Rational(mantissa * pow10(exponent));
        } else {
            value = Rational(mantissa, pow10(-exponent));
            value.canonicalize();
        }
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value)
{
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace lgraph
