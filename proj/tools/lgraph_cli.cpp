#include <lgraph/cli.hpp>
#include <lgraph/family_analysis.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace lgraph;

std::vector<double> split_numbers(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw parse_error("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

// "h" for [-h, h]^2, or "xi_min,xi_max,t_min,t_max".
std::array<double, 4> parse_domain(const std::string& text)
{
    const auto v = split_numbers(text);
    if (v.size() == 1) return {-v[0], v[0], -v[0], v[0]};
    if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
    throw parse_error("--domain takes one half width or four numbers");
}

// "N" or "NxM".
std::array<int, 2> parse_resolution(const std::string& text)
{
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw parse_error("bad --grid '" + text + "'");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Legendrian graphs of tangential families: jets, tangent spaces, envelopes"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::RunConfig config;
    int order = 0;
    std::string grid_text, domain_text, format = "json";
    app.add_option("--cap", config.cap, "jet degree cap")->capture_default_str();
    app.add_option("--order", order, "working jet order (<= cap - 1)");
    app.add_option("--grid", grid_text, "grid points per axis, N or NxM");
    app.add_option("--domain", domain_text, "half width h, or xi_min,xi_max,t_min,t_max");
    app.add_option("--out", config.out, "output directory")->capture_default_str();
    app.add_option("--seed", config.seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

    std::string input;
    auto* classify = app.add_subcommand("classify", "classify a tangential family u(xi, t)");
    classify->add_option("input", input, "inline JSON or a JSON file")->required();

    std::string kind = "eq2", a_text, b_text;
    auto* verify = app.add_subcommand("verify", "tangent-space checks for F_{a,b} and the fold");
    verify->add_option("kind", kind, "eq2 | fold-sufficiency | miniversal")
        ->check(CLI::IsMember({"eq2", "fold-sufficiency", "miniversal"}));
    verify->add_option("--a", a_text, "parameter a (rational)");
    verify->add_option("--b", b_text, "parameter b (rational)");

    bool obj = false;
    auto* envelope = app.add_subcommand("envelope", "criminant and envelope of a family");
    envelope->add_option("input", input, "inline JSON or a JSON file")->required();
    envelope->add_flag("--obj", obj, "also write the Legendrian lift mesh");

    cli::SweepParams sweep_params;
    std::string mode = "beaks", range_text, sa_text, sb_text;
    auto* sweep = app.add_subcommand("sweep", "deformation sweep with cusp counts");
    sweep->add_option("--a", sa_text, "parameter a (default -1/2)");
    sweep->add_option("--b", sb_text, "parameter b (default 1)");
    sweep->add_option("--mode", mode, "beaks | versal")->check(CLI::IsMember({"beaks", "versal"}));
    sweep->add_option("--range", range_text, "lambda_min,lambda_max (default -0.25,0.25)");
    sweep->add_option("--frames", sweep_params.frames, "number of frames")->capture_default_str();
    sweep->add_option("--mu1", sweep_params.mu1, "versal mu1")->capture_default_str();
    sweep->add_option("--mu2", sweep_params.mu2, "versal mu2")->capture_default_str();

    int count = 1000;
    auto* props = app.add_subcommand("properties", "randomized jet-algebra law checks");
    props->add_option("--count", count, "iterations")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.get_option("--order")->count() > 0) config.order = order;
        if (!grid_text.empty()) config.resolution = parse_resolution(grid_text);
        if (!domain_text.empty()) config.domain = parse_domain(domain_text);
        config.format = format == "text" ? cli::Format::text : cli::Format::json;

        cli::Outcome outcome;
        if (*classify) {
            outcome = cli::classify(cli::read_json_argument(input), config);
        } else if (*verify) {
            cli::VerifyParams p;
            p.kind = cli::parse_verify_kind(kind);
            if (!a_text.empty()) p.a = parse_rational(a_text);
            if (!b_text.empty()) p.b = parse_rational(b_text);
            outcome = cli::verify(p, config);
        } else if (*envelope) {
            outcome = cli::envelope(cli::read_json_argument(input), config, obj);
        } else if (*sweep) {
            if (!sa_text.empty()) sweep_params.a = parse_rational(sa_text);
            if (!sb_text.empty()) sweep_params.b = parse_rational(sb_text);
            sweep_params.mode = mode == "versal" ? DeformationMode::versal : DeformationMode::beaks;
            if (!range_text.empty()) {
                const auto r = split_numbers(range_text);
                if (r.size() != 2) throw parse_error("--range takes lambda_min,lambda_max");
                sweep_params.lambda_min = r[0];
                sweep_params.lambda_max = r[1];
            }
            outcome = cli::sweep(sweep_params, config);
        } else {
            outcome = cli::properties(count, config);
        }
        std::cout << cli::render(outcome.report, config.format);
        return outcome.exit_code;
    } catch (const std::exception& e) {
        cli::json err{{"error", e.what()}};
        std::cerr << cli::render(err, config.format);
        return cli::exit_code::malformed;
    }
}
