#pragma once

#include <iosfwd>
#include <string>

#include "srqr/matrix.hpp"

namespace srqr {

enum class MatrixFormat {
    Auto,  // from the file extension: .mtx is Matrix Market, anything else CSV
    MatrixMarket,
    Csv,
};

/// Matrix Market reader for real (or integer) general/symmetric matrices in
/// array or coordinate layout.
DenseMatrix read_matrix_market(std::istream& in);
/// Writes array layout by default; coordinate layout lists nonzeros only.
void write_matrix_market(std::ostream& out, const DenseMatrix& a, bool coordinate = false);

/// Headerless CSV, one matrix row per line. Fields may be quoted; every
/// row must have the same number of fields.
DenseMatrix read_csv(std::istream& in);
void write_csv(std::ostream& out, const DenseMatrix& a);

DenseMatrix load_matrix(const std::string& path, MatrixFormat format = MatrixFormat::Auto);
void save_matrix(const std::string& path, const DenseMatrix& a, MatrixFormat format = MatrixFormat::Auto);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

}  // namespace srqr
