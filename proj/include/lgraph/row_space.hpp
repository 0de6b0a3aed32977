#pragma once

#include <lgraph/rational.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace lgraph {

/// Exact row space of rational vectors, kept in canonical reduced echelon
/// form: every stored row is a primitive integer vector with a positive
/// leading entry, and no other stored row has a nonzero entry in its pivot
/// column. Pivots are the leftmost nonzero column. Elimination is
/// fraction-free (integer combinations followed by content removal), so the
/// stored matrix depends only on the span, not on insertion order.
class RowSpace {
public:
    explicit RowSpace(std::size_t columns);

    std::size_t columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    /// Adds a vector; returns true when the rank grew.
    bool insert(std::span<const Rational> row);
    bool insert_integer(std::vector<Integer> row);

    bool contains(std::span<const Rational> row) const;

    /// Reduction of `row` modulo the span (zero vector iff member), scaled to
    /// a primitive integer vector.
    std::vector<Integer> residual(std::span<const Rational> row) const;

    /// Rows sorted by pivot column.
    std::vector<std::vector<Integer>> reduced_rows() const;
    std::vector<std::size_t> pivot_columns() const;

    friend bool operator==(const RowSpace& a, const RowSpace& b) = default;

private:
    struct Row {
        std::size_t pivot;
        std::vector<Integer> entries;
        friend bool operator==(const Row&, const Row&) = default;
    };

    void reduce(std::vector<Integer>& v) const;

    std::size_t columns_;
    // sorted by pivot
    std::vector<Row> rows_;
};

/// Scales a rational vector to a primitive integer vector with the same span.
std::vector<Integer> to_primitive_integers(std::span<const Rational> row);

}  // namespace lgraph
