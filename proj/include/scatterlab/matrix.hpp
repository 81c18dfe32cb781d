#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "scatterlab/field.hpp"

namespace scatterlab {

// Dense matrix over one field level. Entries are canonical element indices;
// all elimination uses exact field arithmetic with first-nonzero pivoting.
class Mat {
public:
    Mat() = default;
    Mat(const Field* f, size_t rows, size_t cols)
        : field_(f), rows_(rows), cols_(cols), v_(rows * cols, 0) {}

    static Mat identity(const Field* f, size_t n);

    const Field* field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint64_t& at(size_t i, size_t j) { return v_[i * cols_ + j]; }
    uint64_t at(size_t i, size_t j) const { return v_[i * cols_ + j]; }
    FElem elem(size_t i, size_t j) const { return {field_, at(i, j)}; }
    void set(size_t i, size_t j, const FElem& e);

    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(const FElem& c) const;
    Mat transpose() const;
    Mat pow(int64_t e) const; // square matrices; negative exponents invert

    size_t rank() const;
    FElem det() const;
    Mat inverse() const; // throws on singular input
    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    // Basis of the right null space, one vector (length cols) per entry.
    std::vector<std::vector<uint64_t>> nullspace() const;

    // Particular solution of A x = b with free variables set to zero;
    // nullopt when inconsistent.
    static std::optional<std::vector<uint64_t>> solve(const Mat& A,
                                                      const std::vector<uint64_t>& b);

    static Mat block_diag(const std::vector<Mat>& blocks);
    // Assemble from an n x n grid of equally sized square blocks.
    static Mat from_blocks(const std::vector<std::vector<Mat>>& grid);
    Mat block(size_t i0, size_t j0, size_t r, size_t c) const;

    std::vector<uint64_t> column(size_t j) const;
    void set_column(size_t j, const std::vector<uint64_t>& col);

    Mat map_entries(const std::function<uint64_t(uint64_t)>& fn) const;

private:
    const Field* field_ = nullptr;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint64_t> v_;
};

} // namespace scatterlab
