#include "cgl/exact.hpp"

#include <utility>

namespace cgl::exact {

RationalMatrix RationalMatrix::from_integer(const Eigen::MatrixXi& m) {
    RationalMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

RowEchelon reduced_row_echelon(RationalMatrix m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
        Rational inv = 1 / m(row, col);
        for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational f = m(r, col);
            for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

int rank(const Eigen::MatrixXi& m) {
    return static_cast<int>(reduced_row_echelon(RationalMatrix::from_integer(m)).pivot_columns.size());
}

std::vector<std::vector<Rational>> null_space(const Eigen::MatrixXi& m) {
    RowEchelon rref = reduced_row_echelon(RationalMatrix::from_integer(m));
    const int cols = static_cast<int>(m.cols());
    std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
    for (int p : rref.pivot_columns) is_pivot[static_cast<std::size_t>(p)] = 1;

    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols));
        v[static_cast<std::size_t>(free)] = 1;
        for (std::size_t i = 0; i < rref.pivot_columns.size(); ++i)
            v[static_cast<std::size_t>(rref.pivot_columns[i])] = -rref.reduced(static_cast<int>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace cgl::exact
