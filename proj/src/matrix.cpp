#include "scatterlab/matrix.hpp"

#include <stdexcept>

namespace scatterlab {

namespace {
void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}
} // namespace

Mat Mat::identity(const Field* f, size_t n) {
    Mat m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void Mat::set(size_t i, size_t j, const FElem& e) {
    require(e.field == field_, "entry field mismatch");
    at(i, j) = e.idx;
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
}

Mat Mat::operator+(const Mat& o) const {
    require(field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_, "shape/field mismatch");
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = field_->add(v_[i], o.v_[i]);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    require(field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_, "shape/field mismatch");
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = field_->sub(v_[i], o.v_[i]);
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    require(field_ == o.field_, "field mismatch");
    require(cols_ == o.rows_, "inner dimension mismatch");
    Mat r(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            const uint64_t a = at(i, k);
            if (!a) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const uint64_t b = o.at(k, j);
                if (b) r.at(i, j) = field_->add(r.at(i, j), field_->mul(a, b));
            }
        }
    }
    return r;
}

Mat Mat::scaled(const FElem& c) const {
    require(c.field == field_, "scalar field mismatch");
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = field_->mul(v_[i], c.idx);
    return r;
}

Mat Mat::transpose() const {
    Mat r(field_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::pow(int64_t e) const {
    require(rows_ == cols_, "pow of non-square matrix");
    Mat base = e < 0 ? inverse() : *this;
    uint64_t k = static_cast<uint64_t>(e < 0 ? -e : e);
    Mat r = identity(field_, rows_);
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

namespace {

// Row echelon elimination with first-nonzero pivoting; returns rank, tracks
// the determinant factor and row swap count for callers that need them.
struct Echelon {
    size_t rank = 0;
    uint64_t det = 1;
    unsigned swaps = 0;
    std::vector<int> pivot_of_col; // -1 for free columns
};

Echelon eliminate(const Field* f, std::vector<uint64_t>& a, size_t rows, size_t cols,
                  bool full_reduce) {
    Echelon e;
    e.pivot_of_col.assign(cols, -1);
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t sel = r;
        while (sel < rows && a[sel * cols + col] == 0) ++sel;
        if (sel == rows) continue;
        if (sel != r) {
            for (size_t j = 0; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
            ++e.swaps;
        }
        const uint64_t piv = a[r * cols + col];
        e.det = f->mul(e.det, piv);
        const uint64_t piv_inv = f->inv(piv);
        for (size_t j = col; j < cols; ++j)
            a[r * cols + j] = f->mul(a[r * cols + j], piv_inv);
        const size_t start = full_reduce ? 0 : r + 1;
        for (size_t i = start; i < rows; ++i) {
            if (i == r) continue;
            const uint64_t c = a[i * cols + col];
            if (!c) continue;
            for (size_t j = col; j < cols; ++j)
                a[i * cols + j] = f->sub(a[i * cols + j], f->mul(c, a[r * cols + j]));
        }
        e.pivot_of_col[col] = static_cast<int>(r);
        ++r;
    }
    e.rank = r;
    return e;
}

} // namespace

size_t Mat::rank() const {
    std::vector<uint64_t> a(v_);
    return eliminate(field_, a, rows_, cols_, false).rank;
}

FElem Mat::det() const {
    require(rows_ == cols_, "det of non-square matrix");
    std::vector<uint64_t> a(v_);
    Echelon e = eliminate(field_, a, rows_, cols_, false);
    if (e.rank < rows_) return field_->zero();
    uint64_t d = e.det;
    if (e.swaps % 2) d = field_->neg(d);
    return {field_, d};
}

Mat Mat::inverse() const {
    require(rows_ == cols_, "inverse of non-square matrix");
    const size_t n = rows_;
    std::vector<uint64_t> aug(n * 2 * n, 0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i * 2 * n + j] = at(i, j);
        aug[i * 2 * n + n + i] = 1;
    }
    Echelon e = eliminate(field_, aug, n, 2 * n, true);
    if (e.rank < n) throw std::domain_error("matrix is singular");
    Mat r(field_, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r.at(i, j) = aug[i * 2 * n + n + j];
    return r;
}

std::vector<std::vector<uint64_t>> Mat::nullspace() const {
    std::vector<uint64_t> a(v_);
    Echelon e = eliminate(field_, a, rows_, cols_, true);
    std::vector<std::vector<uint64_t>> basis;
    for (size_t col = 0; col < cols_; ++col) {
        if (e.pivot_of_col[col] >= 0) continue;
        std::vector<uint64_t> vec(cols_, 0);
        vec[col] = 1;
        for (size_t pc = 0; pc < cols_; ++pc) {
            const int pr = e.pivot_of_col[pc];
            if (pr >= 0) vec[pc] = field_->neg(a[static_cast<size_t>(pr) * cols_ + col]);
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

std::optional<std::vector<uint64_t>> Mat::solve(const Mat& A, const std::vector<uint64_t>& b) {
    require(b.size() == A.rows(), "rhs size mismatch");
    const Field* f = A.field();
    const size_t rows = A.rows(), cols = A.cols();
    std::vector<uint64_t> aug(rows * (cols + 1));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i * (cols + 1) + j] = A.at(i, j);
        aug[i * (cols + 1) + cols] = b[i];
    }
    Echelon e = eliminate(f, aug, rows, cols + 1, true);
    // inconsistent iff a pivot lands in the rhs column
    if (e.pivot_of_col[cols] >= 0) return std::nullopt;
    std::vector<uint64_t> x(cols, 0);
    for (size_t col = 0; col < cols; ++col) {
        const int pr = e.pivot_of_col[col];
        if (pr >= 0) x[col] = aug[static_cast<size_t>(pr) * (cols + 1) + cols];
    }
    return x;
}

Mat Mat::block_diag(const std::vector<Mat>& blocks) {
    require(!blocks.empty(), "empty block list");
    const Field* f = blocks[0].field();
    size_t n = 0;
    for (const auto& b : blocks) {
        require(b.field() == f && b.rows() == b.cols(), "blocks must be square, same field");
        n += b.rows();
    }
    Mat r(f, n, n);
    size_t off = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) r.at(off + i, off + j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

Mat Mat::from_blocks(const std::vector<std::vector<Mat>>& grid) {
    require(!grid.empty() && !grid[0].empty(), "empty block grid");
    const size_t bs = grid[0][0].rows();
    const Field* f = grid[0][0].field();
    const size_t n = grid.size();
    Mat r(f, n * bs, grid[0].size() * bs);
    for (size_t bi = 0; bi < n; ++bi) {
        require(grid[bi].size() == grid[0].size(), "ragged block grid");
        for (size_t bj = 0; bj < grid[bi].size(); ++bj) {
            const Mat& b = grid[bi][bj];
            require(b.rows() == bs && b.cols() == bs && b.field() == f, "inconsistent blocks");
            for (size_t i = 0; i < bs; ++i)
                for (size_t j = 0; j < bs; ++j) r.at(bi * bs + i, bj * bs + j) = b.at(i, j);
        }
    }
    return r;
}

Mat Mat::block(size_t i0, size_t j0, size_t r, size_t c) const {
    require(i0 + r <= rows_ && j0 + c <= cols_, "block out of range");
    Mat out(field_, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out.at(i, j) = at(i0 + i, j0 + j);
    return out;
}

std::vector<uint64_t> Mat::column(size_t j) const {
    std::vector<uint64_t> col(rows_);
    for (size_t i = 0; i < rows_; ++i) col[i] = at(i, j);
    return col;
}

void Mat::set_column(size_t j, const std::vector<uint64_t>& col) {
    require(col.size() == rows_, "column size mismatch");
    for (size_t i = 0; i < rows_; ++i) at(i, j) = col[i];
}

Mat Mat::map_entries(const std::function<uint64_t(uint64_t)>& fn) const {
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < v_.size(); ++i) r.v_[i] = fn(v_[i]);
    return r;
}

} // namespace scatterlab
