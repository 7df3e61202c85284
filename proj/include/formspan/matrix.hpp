#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "formspan/field.hpp"

namespace formspan {

// Dense matrix over a Field. Rows are the working unit: a subspace is the row
// space of its basis matrix, and reduced row echelon form is the canonical
// representative (unique per row space).
class Mat {
public:
    Mat() : rows_(0), cols_(0), f_(nullptr) {}
    Mat(const Field& f, int rows, int cols)
        : rows_(rows), cols_(cols), f_(&f), a_(static_cast<size_t>(rows) * cols, 0) {}

    static Mat identity(const Field& f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *f_; }

    int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, int v) { a_[static_cast<size_t>(r) * cols_ + c] = static_cast<uint16_t>(v); }

    const uint16_t* row(int r) const { return a_.data() + static_cast<size_t>(r) * cols_; }
    uint16_t* row(int r) { return a_.data() + static_cast<size_t>(r) * cols_; }
    const std::vector<uint16_t>& data() const { return a_; }

    Mat mul(const Mat& o) const;
    Mat transpose() const;
    Mat conj_transpose() const;  // entrywise conj then transpose
    Mat stacked(const Mat& below) const;
    Mat submatrix_rows(int first, int count) const;

    // In-place reduction to RREF; returns the pivot columns.
    std::vector<int> rref();
    int rank() const;
    int det() const;  // square only

    // Basis (as rows) of {x : A x^T = 0}, in RREF.
    Mat kernel() const;

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && f_ == o.f_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    int rows_, cols_;
    const Field* f_;
    std::vector<uint16_t> a_;
};

// rank of a copy, leaving the input untouched but reusing `scratch` storage
int rank_with_scratch(const Mat& m, Mat& scratch);

struct MatHash {
    size_t operator()(const Mat& m) const {
        size_t h = static_cast<size_t>(m.rows()) * 1315423911u ^ static_cast<size_t>(m.cols());
        for (uint16_t v : m.data()) h = h * 1099511628211ull ^ v;
        return h;
    }
};

}  // namespace formspan
