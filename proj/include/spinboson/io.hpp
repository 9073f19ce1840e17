#pragma once

// CSV serialization helpers shared by the CLI and the tests. Numbers are
// written in the shortest decimal form that round-trips to the same double,
// so a reloaded artifact is bit-identical to the values that produced it.

#include <charconv>
#include <complex>
#include <ostream>
#include <string>
#include <system_error>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spinboson/errors.hpp"
#include "spinboson/momentum_grid.hpp"

namespace spinboson {

inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc{}) throw NumericError("failed to format a double");
  return std::string(buf, res.ptr);
}

inline void write_grid_csv(std::ostream& out, const MomentumGrid& grid) {
  out << "k1,k2,k3,w,eps1_1,eps1_2,eps1_3,eps2_1,eps2_2,eps2_3\n";
  for (int i = 0; i < grid.node_count(); ++i) {
    const Eigen::Vector3d k = grid.node(i);
    const Eigen::Vector3d e1 = grid.polarization(i, 0);
    const Eigen::Vector3d e2 = grid.polarization(i, 1);
    out << format_double(k[0]) << ',' << format_double(k[1]) << ','
        << format_double(k[2]) << ',' << format_double(grid.weight(i));
    for (const auto& e : {e1, e2})
      for (int m = 0; m < 3; ++m) out << ',' << format_double(e[m]);
    out << '\n';
  }
}

inline void write_vector_csv(std::ostream& out, const Eigen::VectorXcd& v) {
  out << "index,real,imag\n";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << i << ',' << format_double(v[i].real()) << ','
        << format_double(v[i].imag()) << '\n';
}

inline void write_sparse_csv(
    std::ostream& out, const Eigen::SparseMatrix<std::complex<double>>& op) {
  out << "row,col,real,imag\n";
  for (int c = 0; c < op.outerSize(); ++c)
    for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(op, c);
         it; ++it)
      out << it.row() << ',' << it.col() << ','
          << format_double(it.value().real()) << ','
          << format_double(it.value().imag()) << '\n';
}

inline void write_diagonal_csv(std::ostream& out, const Eigen::VectorXd& diag) {
  out << "index,value\n";
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    out << i << ',' << format_double(diag[i]) << '\n';
}

}  // namespace spinboson
