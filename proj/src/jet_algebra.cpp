#include <lgraph/jet_algebra.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace lgraph {

// ---------------------------------------------------------------------------
// Multidegree
// ---------------------------------------------------------------------------

Multidegree::Multidegree(VarSet vars, std::initializer_list<int> exponents)
    : Multidegree(vars, std::span<const int>(exponents.begin(), exponents.size()))
{
}

Multidegree::Multidegree(VarSet vars, std::span<const int> exponents) : vars_(vars)
{
    if (static_cast<int>(exponents.size()) != arity(vars))
        throw usage_error("multidegree length does not match the variable set");
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0) throw usage_error("negative exponent in multidegree");
        exps_[i] = exponents[i];
    }
}

Multidegree Multidegree::unit(VarSet vars, int variable)
{
    if (variable < 0 || variable >= arity(vars)) throw usage_error("unknown variable index");
    std::array<int, 3> e{};
    e[static_cast<std::size_t>(variable)] = 1;
    return Multidegree(vars, e);
}

Multidegree Multidegree::operator+(const Multidegree& other) const
{
    if (vars_ != other.vars_) throw usage_error("multidegrees over different variable sets");
    return Multidegree(vars_, std::array<int, 3>{exps_[0] + other.exps_[0], exps_[1] + other.exps_[1],
                                                 exps_[2] + other.exps_[2]});
}

std::strong_ordering operator<=>(const Multidegree& a, const Multidegree& b)
{
    if (auto c = a.vars_ <=> b.vars_; c != 0) return c;
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    for (std::size_t i = 0; i < 3; ++i)
        if (auto c = b.exps_[i] <=> a.exps_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::vector<Multidegree> monomial_basis(VarSet vars, int lo, int hi)
{
    std::vector<Multidegree> out;
    lo = std::max(lo, 0);
    for (int d = lo; d <= hi; ++d) {
        if (vars == VarSet::source) {
            for (int i = d; i >= 0; --i) out.emplace_back(vars, std::initializer_list<int>{i, d - i});
        } else {
            for (int i = d; i >= 0; --i)
                for (int j = d - i; j >= 0; --j)
                    out.emplace_back(vars, std::initializer_list<int>{i, j, d - i - j});
        }
    }
    return out;
}

std::size_t jet_dimension(VarSet vars, int n)
{
    if (n < 0) return 0;
    auto m = static_cast<std::size_t>(n);
    return vars == VarSet::source ? (m + 1) * (m + 2) / 2 : (m + 1) * (m + 2) * (m + 3) / 6;
}

// ---------------------------------------------------------------------------
// TruncatedPoly
// ---------------------------------------------------------------------------

TruncatedPoly::TruncatedPoly(VarSet vars, int cap) : vars_(vars), cap_(cap)
{
    if (cap < 0) throw usage_error("degree cap must be non-negative");
}

TruncatedPoly TruncatedPoly::constant(VarSet vars, int cap, const Rational& c)
{
    TruncatedPoly p(vars, cap);
    p.add_term(Multidegree::one(vars), c);
    return p;
}

TruncatedPoly TruncatedPoly::monomial(const Multidegree& m, int cap, const Rational& c)
{
    TruncatedPoly p(m.vars(), cap);
    p.add_term(m, c);
    return p;
}

TruncatedPoly TruncatedPoly::variable(VarSet vars, int variable, int cap)
{
    return monomial(Multidegree::unit(vars, variable), cap);
}

Rational TruncatedPoly::coeff(const Multidegree& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedPoly::add_term(const Multidegree& m, const Rational& c)
{
    if (m.vars() != vars_) throw usage_error("term over a different variable set");
    if (m.total() > cap_ || c == 0) return;
    Rational v = c;
    v.canonicalize();  // mpq_class(2, 4) is not reduced on construction, and GMP arithmetic expects reduced input
    auto [it, inserted] = terms_.try_emplace(m, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) terms_.erase(it);
    }
}

int TruncatedPoly::order() const { return terms_.empty() ? cap_ + 1 : terms_.begin()->first.total(); }

int TruncatedPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

bool TruncatedPoly::is_homogeneous(int d) const
{
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& kv) { return kv.first.total() == d; });
}

TruncatedPoly TruncatedPoly::with_cap(int new_cap) const
{
    TruncatedPoly r(vars_, new_cap);
    for (const auto& [m, c] : terms_) r.add_term(m, c);
    return r;
}

double TruncatedPoly::evaluate(std::span<const double> point) const
{
    if (static_cast<int>(point.size()) != arity(vars_)) throw usage_error("evaluation point has wrong arity");
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double v = c.get_d();
        for (int i = 0; i < m.size(); ++i) v *= std::pow(point[static_cast<std::size_t>(i)], m[i]);
        sum += v;
    }
    return sum;
}

bool operator==(const TruncatedPoly& a, const TruncatedPoly& b)
{
    return a.vars_ == b.vars_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
}

TruncatedPoly TruncatedPoly::operator-() const
{
    TruncatedPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

TruncatedPoly& TruncatedPoly::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    Rational v = s;
    v.canonicalize();
    for (auto& [m, c] : terms_) c *= v;
    return *this;
}

namespace {

void require_compatible(const TruncatedPoly& p, const TruncatedPoly& q)
{
    if (p.vars() != q.vars()) throw usage_error("jets over different variable sets");
    if (p.cap() != q.cap()) throw usage_error("jets with different degree caps");
}

}  // namespace

TruncatedPoly add(const TruncatedPoly& p, const TruncatedPoly& q)
{
    require_compatible(p, q);
    TruncatedPoly r = p;
    for (const auto& [m, c] : q.terms()) r.add_term(m, c);
    return r;
}

TruncatedPoly sub(const TruncatedPoly& p, const TruncatedPoly& q)
{
    require_compatible(p, q);
    TruncatedPoly r = p;
    for (const auto& [m, c] : q.terms()) r.add_term(m, -c);
    return r;
}

TruncatedPoly mul(const TruncatedPoly& p, const TruncatedPoly& q)
{
    require_compatible(p, q);
    TruncatedPoly r(p.vars(), p.cap());
    for (const auto& [mp, cp] : p.terms()) {
        for (const auto& [mq, cq] : q.terms()) {
            // both tables are graded, so later q terms only get heavier
            if (mp.total() + mq.total() > p.cap()) break;
            r.add_term(mp + mq, cp * cq);
        }
    }
    return r;
}

TruncatedPoly scale(const TruncatedPoly& p, const Rational& s)
{
    TruncatedPoly r = p;
    r *= s;
    return r;
}

TruncatedPoly power(const TruncatedPoly& p, int n)
{
    if (n < 0) throw usage_error("negative power");
    TruncatedPoly r = TruncatedPoly::constant(p.vars(), p.cap(), 1);
    TruncatedPoly base = p;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return r;
}

TruncatedPoly derive(const TruncatedPoly& p, int variable)
{
    if (variable < 0 || variable >= arity(p.vars())) throw usage_error("derivative by an unknown variable");
    TruncatedPoly r(p.vars(), p.cap());
    for (const auto& [m, c] : p.terms()) {
        int e = m[variable];
        if (e == 0) continue;
        std::array<int, 3> exps{m[0], m.size() > 1 ? m[1] : 0, m.size() > 2 ? m[2] : 0};
        exps[static_cast<std::size_t>(variable)] -= 1;
        r.add_term(Multidegree(p.vars(), std::span<const int>(exps.data(), static_cast<std::size_t>(m.size()))),
                   c * e);
    }
    return r;
}

TruncatedPoly jet(const TruncatedPoly& p, int n)
{
    if (n < 0 || n > p.cap()) throw usage_error("jet order outside 0..cap");
    TruncatedPoly r(p.vars(), p.cap());
    for (const auto& [m, c] : p.terms()) {
        if (m.total() > n) break;
        r.add_term(m, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// MapGerm and composition
// ---------------------------------------------------------------------------

MapGerm::MapGerm(std::vector<TruncatedPoly> components) : components_(std::move(components))
{
    if (components_.size() != 2 && components_.size() != 3)
        throw usage_error("map germ must have two or three components");
    const int cap = components_.front().cap();
    for (const auto& c : components_) {
        if (c.vars() != VarSet::source) throw usage_error("map germ components must be source jets");
        if (c.cap() != cap) throw usage_error("map germ components must share one degree cap");
        if (c.coeff(Multidegree::one(VarSet::source)) != 0)
            throw usage_error("map germ components must vanish at the origin");
    }
}

namespace {

// powers[i][k] = base_i^k at the working cap
std::vector<std::vector<TruncatedPoly>> power_table(std::span<const TruncatedPoly> bases, int max_power)
{
    std::vector<std::vector<TruncatedPoly>> table;
    table.reserve(bases.size());
    for (const auto& b : bases) {
        std::vector<TruncatedPoly> row;
        row.reserve(static_cast<std::size_t>(max_power) + 1);
        row.push_back(TruncatedPoly::constant(VarSet::source, b.cap(), 1));
        for (int k = 1; k <= max_power; ++k) row.push_back(mul(row.back(), b));
        table.push_back(std::move(row));
    }
    return table;
}

TruncatedPoly evaluate_on(const TruncatedPoly& g, const std::vector<std::vector<TruncatedPoly>>& powers, int cap)
{
    TruncatedPoly r(VarSet::source, cap);
    for (const auto& [m, c] : g.terms()) {
        if (m.total() > cap) break;
        TruncatedPoly term = TruncatedPoly::constant(VarSet::source, cap, c);
        for (int i = 0; i < m.size(); ++i)
            if (m[i] > 0) term = mul(term, powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(m[i])]);
        for (const auto& [mt, ct] : term.terms()) r.add_term(mt, ct);
    }
    return r;
}

}  // namespace

TruncatedPoly compose(const TruncatedPoly& g, const MapGerm& f)
{
    if (g.vars() != VarSet::target) throw usage_error("compose expects g over the target variables");
    for (const auto& [m, c] : g.terms())
        for (int i = f.size(); i < m.size(); ++i)
            if (m[i] != 0) throw usage_error("g uses a target variable the map does not provide");
    const int cap = f.cap();
    auto powers = power_table(f.components(), cap);
    return evaluate_on(g, powers, cap);
}

TruncatedPoly substitute(const TruncatedPoly& p, const TruncatedPoly& s_xi, const TruncatedPoly& s_t)
{
    if (p.vars() != VarSet::source || s_xi.vars() != VarSet::source || s_t.vars() != VarSet::source)
        throw usage_error("substitute works on source jets");
    if (s_xi.cap() != p.cap() || s_t.cap() != p.cap()) throw usage_error("substitutes must share the cap");
    if (s_xi.order() < 1 || s_t.order() < 1) throw usage_error("substitutes must vanish at the origin");
    const std::array<TruncatedPoly, 2> bases{s_xi, s_t};
    auto powers = power_table(bases, p.cap());
    return evaluate_on(p, powers, p.cap());
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

std::string_view variable_name(VarSet vars, int variable)
{
    static constexpr std::array<std::string_view, 2> source{"xi", "t"};
    static constexpr std::array<std::string_view, 3> target{"x", "y", "z"};
    if (variable < 0 || variable >= arity(vars)) throw usage_error("unknown variable index");
    return vars == VarSet::source ? source[static_cast<std::size_t>(variable)]
                                  : target[static_cast<std::size_t>(variable)];
}

namespace {

// Display priority: t before xi in the source, x before y before z in the target.
std::array<int, 3> display_order(VarSet vars)
{
    return vars == VarSet::source ? std::array<int, 3>{var::t, var::xi, -1} : std::array<int, 3>{0, 1, 2};
}

bool display_less(const Multidegree& a, const Multidegree& b)
{
    if (a.total() != b.total()) return a.total() < b.total();
    for (int v : display_order(a.vars())) {
        if (v < 0) break;
        if (a[v] != b[v]) return a[v] > b[v];
    }
    return false;
}

std::string monomial_text(const Multidegree& m)
{
    std::string out;
    for (int v : display_order(m.vars())) {
        if (v < 0 || m[v] == 0) continue;
        if (!out.empty()) out += ' ';
        out += variable_name(m.vars(), v);
        if (m[v] > 1) out += '^' + std::to_string(m[v]);
    }
    return out;
}

}  // namespace

std::string to_string(const Multidegree& m)
{
    auto s = monomial_text(m);
    return s.empty() ? "1" : s;
}

std::string to_string(const TruncatedPoly& p)
{
    if (p.is_zero()) return "0";
    std::vector<std::pair<Multidegree, Rational>> terms(p.terms().begin(), p.terms().end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return display_less(a.first, b.first); });
    std::string out;
    for (const auto& [m, c] : terms) {
        const bool negative = c < 0;
        Rational magnitude = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += to_string(magnitude);
        auto mono = monomial_text(m);
        if (!mono.empty()) out += ' ' + mono;
    }
    return out;
}

std::string to_string(const MapGerm& f)
{
    std::string out = "(";
    for (int i = 0; i < f.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(f[i]);
    }
    return out + ")";
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, VarSet vars, int cap) : text_(text), vars_(vars), cap_(cap) {}

    TruncatedPoly parse()
    {
        TruncatedPoly result(vars_, cap_);
        skip_space();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            Rational sign = 1;
            bool have_sign = false;
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                if (peek() == '-') sign = -1;
                have_sign = true;
                ++pos_;
                skip_space();
                if (!at_end() && (peek() == '+' || peek() == '-')) fail("repeated sign");
            }
            if (!first && !have_sign) fail("expected '+' or '-' between terms");
            first = false;
            parse_term(result, sign);
            skip_space();
        }
        return result;
    }

private:
    void parse_term(TruncatedPoly& result, const Rational& sign)
    {
        Rational coeff = 1;
        bool have_coeff = false;
        if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            coeff = parse_number();
            have_coeff = true;
            skip_space();
        }
        std::array<int, 3> exps{};
        bool have_factor = false;
        while (!at_end()) {
            if (peek() == '*') {
                ++pos_;
                skip_space();
                continue;
            }
            int v = parse_variable();
            if (v < 0) break;
            int e = 1;
            skip_space();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_space();
                e = parse_exponent();
            }
            exps[static_cast<std::size_t>(v)] += e;
            have_factor = true;
            skip_space();
        }
        if (!have_coeff && !have_factor) fail("expected a term");
        Multidegree m(vars_, std::span<const int>(exps.data(), static_cast<std::size_t>(arity(vars_))));
        result.add_term(m, sign * coeff);
    }

    Rational parse_number()
    {
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '/'))
            ++pos_;
        return parse_rational(text_.substr(start, pos_ - start));
    }

    int parse_exponent()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected an exponent after '^'");
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    int parse_variable()
    {
        static constexpr std::string_view greek_xi = "\xCE\xBE";  // ξ
        auto rest = text_.substr(pos_);
        auto take = [&](std::string_view name, int index) {
            if (rest.substr(0, name.size()) != name) return -1;
            auto after = rest.substr(name.size());
            if (!after.empty() && std::isalnum(static_cast<unsigned char>(after.front()))) return -1;
            pos_ += name.size();
            return index;
        };
        int v = -1;
        if (vars_ == VarSet::source) {
            if ((v = take("xi", var::xi)) >= 0) return v;
            if ((v = take(greek_xi, var::xi)) >= 0) return v;
            if ((v = take("t", var::t)) >= 0) return v;
        } else {
            if ((v = take("x", var::x)) >= 0) return v;
            if ((v = take("y", var::y)) >= 0) return v;
            if ((v = take("z", var::z)) >= 0) return v;
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || static_cast<unsigned char>(peek()) >= 0x80)
            fail("unknown variable");
        if (peek() != '+' && peek() != '-') fail("unexpected character");
        return -1;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw parse_error(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    std::string_view text_;
    VarSet vars_;
    int cap_;
    std::size_t pos_ = 0;
};

}  // namespace

TruncatedPoly parse_poly(std::string_view text, VarSet vars, int cap)
{
    return PolyParser(text, vars, cap).parse();
}

}  // namespace lgraph
