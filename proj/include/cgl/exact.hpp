#pragma once

#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace cgl::exact {

using Rational = boost::multiprecision::cpp_rational;

// Dense row-major rational matrix.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
    static RationalMatrix from_integer(const Eigen::MatrixXi& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
    const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

private:
    int rows_;
    int cols_;
    std::vector<Rational> data_;
};

struct RowEchelon {
    RationalMatrix reduced;
    std::vector<int> pivot_columns;
};

// Reduced row-echelon form by Gauss-Jordan elimination over Q.
RowEchelon reduced_row_echelon(RationalMatrix m);

int rank(const Eigen::MatrixXi& m);

// Null-space basis read off the RREF: one vector per free column, in
// increasing free-column order, with a 1 in that column.
std::vector<std::vector<Rational>> null_space(const Eigen::MatrixXi& m);

}  // namespace cgl::exact
