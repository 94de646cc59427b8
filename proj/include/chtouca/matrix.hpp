#pragma once

#include "chtouca/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace chtouca {

// Dense row-major matrix.
template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, const T& fill = T(0)) : rows(r), cols(c), a(r * c, fill) {}

    static Mat from_rows(const std::vector<std::vector<T>>& v, std::size_t ncols = 0) {
        Mat m(v.size(), v.empty() ? ncols : v[0].size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].size() != m.cols) throw std::invalid_argument("ragged matrix");
            for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = v[i][j];
        }
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a.begin() + i * cols, a.begin() + (i + 1) * cols);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void append_row(const std::vector<T>& v) {
        if (rows == 0 && cols == 0) cols = v.size();
        if (v.size() != cols) throw std::invalid_argument("row length mismatch");
        a.insert(a.end(), v.begin(), v.end());
        ++rows;
    }
    std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> v;
        for (std::size_t i = 0; i < rows; ++i) v.push_back(row(i));
        return v;
    }
    Mat transpose() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }
};

using QMat = Mat<Q>;
using ZMat = Mat<Z>;

}  // namespace chtouca
