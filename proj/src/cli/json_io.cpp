#include <lgraph/cli.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace lgraph::cli {

json read_json_argument(std::string_view argument)
{
    std::string text;
    const auto first = argument.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && argument[first] == '{') {
        text = std::string(argument);
    } else {
        std::ifstream in{std::filesystem::path(argument)};
        if (!in) throw parse_error("cannot read input file '" + std::string(argument) + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        json doc = json::parse(text);
        if (!doc.is_object()) throw parse_error("input JSON must be an object");
        return doc;
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

Rational rational_field(const json& object, const std::string& key)
{
    if (!object.contains(key)) throw parse_error("missing field '" + key + "'");
    const json& v = object.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
    if (v.is_number_float()) {
        // shortest round-trip decimal, read back exactly: 0.25 -> 1/4
        std::array<char, 64> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v.get<double>());
        return parse_rational(std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data())));
    }
    throw parse_error("field '" + key + "' must be a number or a rational string");
}

namespace {

void flatten(const json& v, const std::string& prefix, std::ostringstream& out)
{
    if (v.is_object()) {
        for (const auto& [k, item] : v.items()) flatten(item, prefix.empty() ? k : prefix + "." + k, out);
        return;
    }
    if (v.is_array()) {
        const bool scalars = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
        if (scalars) {
            out << prefix << ":";
            for (const auto& e : v) out << ' ' << (e.is_string() ? e.get<std::string>() : e.dump());
            out << '\n';
            return;
        }
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
        return;
    }
    out << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

}  // namespace

std::string render_text(const json& report)
{
    std::ostringstream out;
    flatten(report, "", out);
    return out.str();
}

std::string render(const json& report, Format format)
{
    return format == Format::json ? report.dump(2) + "\n" : render_text(report);
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw io_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw io_error("failed writing '" + path.string() + "'");
}

}  // namespace lgraph::cli
