#pragma once

#include <lgraph/jet_algebra.hpp>

#include <random>

namespace testing {

inline lgraph::TruncatedPoly src(const char* text, int cap = lgraph::default_cap)
{
    return lgraph::parse_poly(text, lgraph::VarSet::source, cap);
}

inline lgraph::TruncatedPoly tgt(const char* text, int cap = lgraph::default_cap)
{
    return lgraph::parse_poly(text, lgraph::VarSet::target, cap);
}

// Random sparse jets with small rational coefficients.
class RandomJets {
public:
    explicit RandomJets(std::uint64_t seed, int cap = lgraph::default_cap) : rng_(seed), cap_(cap) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    lgraph::Rational coefficient()
    {
        int num = uniform(-6, 5);
        if (num >= 0) ++num;
        lgraph::Rational r(num, uniform(1, 5));
        r.canonicalize();
        return r;
    }

    lgraph::TruncatedPoly poly(lgraph::VarSet vars, int min_degree = 0, int max_terms = 5)
    {
        lgraph::TruncatedPoly p(vars, cap_);
        const int n = uniform(1, max_terms);
        for (int k = 0; k < n; ++k) {
            const int d = uniform(min_degree, cap_);
            if (vars == lgraph::VarSet::source) {
                const int a = uniform(0, d);
                p.add_term(lgraph::Multidegree(vars, {a, d - a}), coefficient());
            } else {
                const int a = uniform(0, d);
                const int b = uniform(0, d - a);
                p.add_term(lgraph::Multidegree(vars, {a, b, d - a - b}), coefficient());
            }
        }
        return p;
    }

    lgraph::MapGerm germ(int components = 3, int max_terms = 4)
    {
        std::vector<lgraph::TruncatedPoly> c;
        for (int i = 0; i < components; ++i) c.push_back(poly(lgraph::VarSet::source, 1, max_terms));
        return lgraph::MapGerm(c);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    int cap_;
};

}  // namespace testing
