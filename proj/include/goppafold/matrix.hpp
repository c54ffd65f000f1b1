#pragma once

// Dense matrices over a FieldCtx with exact reduced-row-echelon form,
// rank, and right kernel.  RREF is the canonical form used for code
// identity throughout.

#include "goppafold/field.hpp"

namespace goppafold {

class MatrixGF {
  public:
    MatrixGF(const FieldCtx& ctx, int rows, int cols)
        : f_(&ctx), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("MatrixGF: negative shape");
    }

    static MatrixGF identity(const FieldCtx& ctx, int n) {
        MatrixGF m(ctx, n, n);
        for (int i = 0; i < n; ++i) m.set_raw(i, i, 1);
        return m;
    }

    static MatrixGF from_rows(const FieldCtx& ctx, const std::vector<std::vector<uint32_t>>& rows) {
        int n = rows.empty() ? 0 : static_cast<int>(rows[0].size());
        MatrixGF m(ctx, static_cast<int>(rows.size()), n);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(rows[r].size()) != n) throw std::invalid_argument("MatrixGF: ragged rows");
            for (int c = 0; c < n; ++c) m.set_raw(static_cast<int>(r), c, rows[r][c]);
        }
        return m;
    }

    const FieldCtx& ctx() const { return *f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    uint32_t raw(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set_raw(int r, int c, uint32_t v) {
        if (v >= f_->size) throw std::invalid_argument("MatrixGF: entry out of range");
        a_[static_cast<size_t>(r) * cols_ + c] = v;
    }
    Fe at(int r, int c) const { return Fe(*f_, raw(r, c)); }
    void set(int r, int c, const Fe& v) {
        if (v.f != f_) throw std::invalid_argument("MatrixGF: mixed contexts");
        set_raw(r, c, v.v);
    }

    std::vector<uint32_t> row(int r) const {
        return {a_.begin() + static_cast<size_t>(r) * cols_, a_.begin() + static_cast<size_t>(r + 1) * cols_};
    }

    friend bool operator==(const MatrixGF& x, const MatrixGF& y) {
        return x.f_ == y.f_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const MatrixGF& x, const MatrixGF& y) { return !(x == y); }

    friend MatrixGF operator*(const MatrixGF& x, const MatrixGF& y) {
        if (x.f_ != y.f_) throw std::invalid_argument("MatrixGF: mixed contexts");
        if (x.cols_ != y.rows_) throw std::invalid_argument("MatrixGF: shape mismatch");
        MatrixGF r(*x.f_, x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i) {
            for (int k = 0; k < x.cols_; ++k) {
                uint32_t v = x.raw(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.cols_; ++j) {
                    uint32_t prod = x.f_->mul(v, y.raw(k, j));
                    r.set_raw(i, j, x.f_->add(r.raw(i, j), prod));
                }
            }
        }
        return r;
    }

    MatrixGF transpose() const {
        MatrixGF t(*f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.set_raw(j, i, raw(i, j));
        return t;
    }

    MatrixGF vstack(const MatrixGF& other) const {
        if (f_ != other.f_ || cols_ != other.cols_) throw std::invalid_argument("MatrixGF: vstack mismatch");
        MatrixGF r(*f_, rows_ + other.rows_, cols_);
        std::copy(a_.begin(), a_.end(), r.a_.begin());
        std::copy(other.a_.begin(), other.a_.end(), r.a_.begin() + a_.size());
        return r;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int pr = -1;
            for (int i = r; i < rows_; ++i) {
                if (raw(i, c) != 0) {
                    pr = i;
                    break;
                }
            }
            if (pr < 0) continue;
            swap_rows(r, pr);
            scale_row(r, f_->inv(raw(r, c)));
            for (int i = 0; i < rows_; ++i) {
                if (i == r) continue;
                uint32_t v = raw(i, c);
                if (v != 0) axpy_row(i, r, f_->neg(v));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    /// RREF with zero rows removed (the canonical generator form).
    MatrixGF row_basis() const {
        MatrixGF m = *this;
        auto pivots = m.rref();
        MatrixGF out(*f_, static_cast<int>(pivots.size()), cols_);
        for (int i = 0; i < out.rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.set_raw(i, j, m.raw(i, j));
        return out;
    }

    int rank() const {
        MatrixGF m = *this;
        return static_cast<int>(m.rref().size());
    }

    /// Canonical basis of the right kernel {v : M v^T = 0}, one row per free
    /// column, itself in RREF.
    MatrixGF kernel() const {
        MatrixGF m = *this;
        std::vector<int> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        MatrixGF ker(*f_, cols_ - static_cast<int>(pivots.size()), cols_);
        int out = 0;
        for (int fc = 0; fc < cols_; ++fc) {
            if (is_pivot[fc]) continue;
            ker.set_raw(out, fc, 1);
            for (size_t k = 0; k < pivots.size(); ++k)
                ker.set_raw(out, pivots[k], f_->neg(m.raw(static_cast<int>(k), fc)));
            ++out;
        }
        return ker.row_basis();
    }

    /// True when v lies in the row space; assumes *this is already in RREF
    /// with its pivot columns supplied.
    bool reduces_to_zero(std::vector<uint32_t> v, const std::vector<int>& pivots) const {
        for (size_t k = 0; k < pivots.size(); ++k) {
            uint32_t c = v[pivots[k]];
            if (c == 0) continue;
            for (int j = 0; j < cols_; ++j) v[j] = f_->sub(v[j], f_->mul(c, raw(static_cast<int>(k), j)));
        }
        return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
    }

  private:
    const FieldCtx* f_;
    int rows_, cols_;
    std::vector<uint32_t> a_;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(a_[static_cast<size_t>(i) * cols_ + c], a_[static_cast<size_t>(j) * cols_ + c]);
    }
    void scale_row(int i, uint32_t s) {
        for (int c = 0; c < cols_; ++c) {
            auto& v = a_[static_cast<size_t>(i) * cols_ + c];
            v = f_->mul(v, s);
        }
    }
    // row_i += s * row_j
    void axpy_row(int i, int j, uint32_t s) {
        for (int c = 0; c < cols_; ++c) {
            uint32_t v = f_->mul(s, a_[static_cast<size_t>(j) * cols_ + c]);
            auto& t = a_[static_cast<size_t>(i) * cols_ + c];
            t = f_->add(t, v);
        }
    }
};

}  // namespace goppafold
