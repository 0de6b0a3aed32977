#include <lgraph/row_space.hpp>

#include <algorithm>

namespace lgraph {

namespace {

std::size_t leading_column(const std::vector<Integer>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) return i;
    return v.size();
}

void make_primitive(std::vector<Integer>& v)
{
    Integer g = 0;
    for (const auto& x : v) {
        if (x == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1)
        for (auto& x : v)
            if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    auto lead = leading_column(v);
    if (lead < v.size() && v[lead] < 0)
        for (auto& x : v) x = -x;
}

// v <- p[c] * v - v[c] * p, which clears column c of v
void eliminate(std::vector<Integer>& v, const std::vector<Integer>& p, std::size_t c)
{
    if (v[c] == 0) return;
    Integer g = gcd(p[c], v[c]);
    Integer fp = p[c] / g;
    Integer fv = v[c] / g;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (p[i] == 0) {
            if (v[i] != 0) v[i] *= fp;
        } else {
            v[i] = fp * v[i] - fv * p[i];
        }
    }
}

}  // namespace

std::vector<Integer> to_primitive_integers(std::span<const Rational> row)
{
    Integer l = 1;
    for (const auto& x : row)
        if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) out[i] = row[i].get_num() * (l / row[i].get_den());
    make_primitive(out);
    return out;
}

RowSpace::RowSpace(std::size_t columns) : columns_(columns) {}

void RowSpace::reduce(std::vector<Integer>& v) const
{
    for (const auto& r : rows_) eliminate(v, r.entries, r.pivot);
    make_primitive(v);
}

bool RowSpace::insert(std::span<const Rational> row)
{
    if (row.size() != columns_) throw usage_error("row length does not match the row space");
    return insert_integer(to_primitive_integers(row));
}

bool RowSpace::insert_integer(std::vector<Integer> v)
{
    if (v.size() != columns_) throw usage_error("row length does not match the row space");
    reduce(v);
    const auto pivot = leading_column(v);
    if (pivot == columns_) return false;
    for (auto& r : rows_) {
        if (r.entries[pivot] == 0) continue;
        eliminate(r.entries, v, pivot);
        make_primitive(r.entries);
    }
    auto at = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                               [](const Row& r, std::size_t p) { return r.pivot < p; });
    rows_.insert(at, Row{pivot, std::move(v)});
    return true;
}

std::vector<Integer> RowSpace::residual(std::span<const Rational> row) const
{
    if (row.size() != columns_) throw usage_error("row length does not match the row space");
    auto v = to_primitive_integers(row);
    reduce(v);
    return v;
}

bool RowSpace::contains(std::span<const Rational> row) const
{
    auto v = residual(row);
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::vector<std::vector<Integer>> RowSpace::reduced_rows() const
{
    std::vector<std::vector<Integer>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.entries);
    return out;
}

std::vector<std::size_t> RowSpace::pivot_columns() const
{
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.pivot);
    return out;
}

}  // namespace lgraph
