#pragma once

#include <map>
#include <string>
#include <vector>

#include "gateforge/qmatrix.hpp"

namespace gateforge {

// Tensor-product Pauli basis label: 1 letter over {I,X,Y,Z} for dimension 2,
// 2 letters for dimension 4. The first letter acts on the Input spin.
struct PauliLabel {
  std::string letters;

  explicit PauliLabel(std::string s);
  PauliLabel(const char* s) : PauliLabel(std::string(s)) {}

  int dim() const { return letters.size() == 1 ? 2 : 4; }

  bool operator<(const PauliLabel& o) const { return letters < o.letters; }
  bool operator==(const PauliLabel& o) const { return letters == o.letters; }
};

QMatrix pauli_matrix(char axis);
QMatrix label_matrix(const PauliLabel& label);

// The 4 (dim 2) or 16 (dim 4) labels in lexicographic order; orthogonal under
// the trace inner product, tr(Pa^dag Pb) = dim * delta_ab.
std::vector<PauliLabel> pauli_basis(int dim);

// Real expansion of a Hermitian matrix over the Pauli tensor basis.
// Coefficients carry energy units hbar/delta_t when the source is a
// Hamiltonian. Terms with negligible coefficients are omitted; coefficient()
// reports those as exactly zero.
struct PauliDecomposition {
  int dim = 2;
  std::map<PauliLabel, double> terms;

  double coefficient(const PauliLabel& label) const;
  PauliLabel identity_label() const { return PauliLabel(dim == 2 ? "I" : "II"); }
};

// c_a = tr(P_a^dag H) / dim. Requires H Hermitian (the expansion is real).
PauliDecomposition pauli_decompose(const QMatrix& h);

QMatrix pauli_compose(const PauliDecomposition& d);

}  // namespace gateforge
