#pragma once

#include "twistor/polynomial.hpp"

#include <vector>

namespace twistor {

class ExactMatrix {
public:
    ExactMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    GaussianRational& at(size_t r, size_t c) { return data_.at(r * cols_ + c); }
    const GaussianRational& at(size_t r, size_t c) const { return data_.at(r * cols_ + c); }

    ExactMatrix transpose() const;
    static ExactMatrix identity(size_t n);

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    size_t rows_, cols_;
    std::vector<GaussianRational> data_;
};

/// Exact rank via fraction-free (Bareiss) elimination.  Rows are scaled to
/// Gaussian-integer entries first so intermediate values stay minors of the
/// scaled matrix.
int rank(const ExactMatrix& m);

/// Basis of the right nullspace, via exact Gauss-Jordan.
std::vector<std::vector<GaussianRational>> nullspace(const ExactMatrix& m);

/// All first partials of the system, evaluated exactly at the point.
/// Row i, column j holds d(system[i])/d(var j).
ExactMatrix jacobian_at(const std::vector<Polynomial>& system,
                        const std::map<std::string, GaussianRational>& point);

/// Rank of the symmetric Gram matrix of a homogeneous quadratic form.
int quad_form_rank(const Polynomial& q);

/// Gram matrix of a homogeneous degree-2 polynomial (characteristic 0).
ExactMatrix gram_matrix(const Polynomial& q);

}  // namespace twistor
