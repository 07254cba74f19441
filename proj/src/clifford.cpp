#include "eqindex/clifford.hpp"

#include <algorithm>
#include <map>

namespace eqindex {

namespace {

MatrixXcd pauli(int k) {
  MatrixXcd s(2, 2);
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, -kI, kI, 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

}  // namespace

CliffordAction<double> make_pauli_action() {
  return CliffordAction<double>({pauli(1) / kI, pauli(2) / kI, pauli(3) / kI});
}

CliffordAction<double> make_plane_action() {
  return CliffordAction<double>({pauli(1) / kI, pauli(2) / kI}, Grading{{0}, {1}});
}

std::vector<std::vector<int>> exterior_basis(int n) {
  std::vector<std::vector<int>> basis;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    basis.push_back(std::move(s));
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

CliffordAction<double> make_exterior_action(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("exterior action supports 1 <= n <= 8");
  const auto basis = exterior_basis(n);
  const int dim = static_cast<int>(basis.size());
  std::map<std::vector<int>, int> position;
  for (int k = 0; k < dim; ++k) position.emplace(basis[k], k);

  std::vector<MatrixXcd> generators;
  for (int i = 0; i < n; ++i) {
    MatrixXcd c = MatrixXcd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
      const auto& s = basis[col];
      // Moving e_i past the smaller indices of s.
      const int before = static_cast<int>(std::count_if(s.begin(), s.end(), [i](int j) { return j < i; }));
      const double sign = (before % 2 == 0) ? 1.0 : -1.0;
      auto it = std::find(s.begin(), s.end(), i);
      if (it == s.end()) {
        auto t = s;
        t.insert(std::upper_bound(t.begin(), t.end(), i), i);
        c(position.at(t), col) += sign;  // e_i ^ e_S
      } else {
        auto t = s;
        t.erase(t.begin() + (it - s.begin()));
        c(position.at(t), col) -= sign;  // - iota_{e_i} e_S
      }
    }
    generators.push_back(std::move(c));
  }

  Grading g;
  for (int k = 0; k < dim; ++k) (basis[k].size() % 2 == 0 ? g.positive : g.negative).push_back(k);
  return CliffordAction<double>(std::move(generators), std::move(g));
}

}  // namespace eqindex
