#include "formspan/matrix.hpp"

#include <stdexcept>

namespace formspan {

Mat Mat::identity(const Field& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::mul(const Mat& o) const {
    if (cols_ != o.rows_ || f_ != o.f_) throw std::invalid_argument("matrix product shape mismatch");
    const Field& F = *f_;
    Mat r(F, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            int aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                int t = F.mul(aik, o.at(k, j));
                r.set(i, j, F.add(r.at(i, j), t));
            }
        }
    return r;
}

Mat Mat::transpose() const {
    Mat r(*f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

Mat Mat::conj_transpose() const {
    const Field& F = *f_;
    Mat r(F, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, F.conj(at(i, j)));
    return r;
}

Mat Mat::stacked(const Mat& below) const {
    if (cols_ != below.cols_ || f_ != below.f_) throw std::invalid_argument("stack shape mismatch");
    Mat r(*f_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
    for (int i = 0; i < below.rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(rows_ + i, j, below.at(i, j));
    return r;
}

Mat Mat::submatrix_rows(int first, int count) const {
    Mat r(*f_, count, cols_);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(first + i, j));
    return r;
}

std::vector<int> Mat::rref() {
    const Field& F = *f_;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int pr = -1;
        for (int i = r; i < rows_; ++i)
            if (at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols_; ++j) {
                int t = at(r, j);
                set(r, j, at(pr, j));
                set(pr, j, t);
            }
        int s = F.inv(at(r, c));
        if (s != 1)
            for (int j = c; j < cols_; ++j) set(r, j, F.mul(s, at(r, j)));
        for (int i = 0; i < rows_; ++i) {
            if (i == r) continue;
            int v = at(i, c);
            if (v == 0) continue;
            for (int j = c; j < cols_; ++j) set(i, j, F.sub(at(i, j), F.mul(v, at(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int Mat::rank() const {
    Mat c = *this;
    return static_cast<int>(c.rref().size());
}

int rank_with_scratch(const Mat& m, Mat& scratch) {
    scratch = m;
    return static_cast<int>(scratch.rref().size());
}

int Mat::det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    const Field& F = *f_;
    Mat w = *this;
    int detval = 1;
    for (int c = 0; c < cols_; ++c) {
        int pr = -1;
        for (int i = c; i < rows_; ++i)
            if (w.at(i, c) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) return 0;
        if (pr != c) {
            for (int j = 0; j < cols_; ++j) {
                int t = w.at(c, j);
                w.set(c, j, w.at(pr, j));
                w.set(pr, j, t);
            }
            detval = F.neg(detval);
        }
        int pivot = w.at(c, c);
        detval = F.mul(detval, pivot);
        int s = F.inv(pivot);
        for (int i = c + 1; i < rows_; ++i) {
            int v = w.at(i, c);
            if (v == 0) continue;
            int factor = F.mul(v, s);
            for (int j = c; j < cols_; ++j) w.set(i, j, F.sub(w.at(i, j), F.mul(factor, w.at(c, j))));
        }
    }
    return detval;
}

Mat Mat::kernel() const {
    const Field& F = *f_;
    Mat w = *this;
    std::vector<int> pivots = w.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    int nullity = cols_ - static_cast<int>(pivots.size());
    Mat kb(F, nullity, cols_);
    int kr = 0;
    for (int c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        kb.set(kr, c, 1);
        for (size_t pi = 0; pi < pivots.size(); ++pi) {
            // pivot row pi has 1 in column pivots[pi]
            kb.set(kr, pivots[pi], F.neg(w.at(static_cast<int>(pi), c)));
        }
        ++kr;
    }
    kb.rref();
    return kb;
}

}  // namespace formspan
