#include "gateforge/pauli.hpp"

#include <cmath>

namespace gateforge {

PauliLabel::PauliLabel(std::string s) : letters(std::move(s)) {
  if (letters.size() != 1 && letters.size() != 2)
    throw DimensionError("PauliLabel: need 1 or 2 letters, got \"" + letters + "\"");
  for (char c : letters)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("PauliLabel: letters must be I, X, Y or Z");
}

QMatrix pauli_matrix(char axis) {
  switch (axis) {
    case 'I':
      return QMatrix::identity(2);
    case 'X':
      return QMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case 'Y':
      return QMatrix(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
    case 'Z':
      return QMatrix(2, {1.0, 0.0, 0.0, -1.0});
    default:
      throw std::invalid_argument("pauli_matrix: unknown axis");
  }
}

QMatrix label_matrix(const PauliLabel& label) {
  if (label.letters.size() == 1) return pauli_matrix(label.letters[0]);
  return tensor_product(pauli_matrix(label.letters[0]), pauli_matrix(label.letters[1]));
}

std::vector<PauliLabel> pauli_basis(int dim) {
  static const char axes[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliLabel> out;
  if (dim == 2) {
    for (char a : axes) out.push_back(PauliLabel(std::string(1, a)));
  } else if (dim == 4) {
    for (char a : axes)
      for (char b : axes) out.push_back(PauliLabel(std::string{a, b}));
  } else {
    throw DimensionError("pauli_basis: dimension must be 2 or 4");
  }
  return out;
}

double PauliDecomposition::coefficient(const PauliLabel& label) const {
  auto it = terms.find(label);
  return it == terms.end() ? 0.0 : it->second;
}

PauliDecomposition pauli_decompose(const QMatrix& h) {
  if (!is_hermitian(h, 1e-10))
    throw HermiticityError("pauli_decompose: matrix is not Hermitian");
  const int dim = h.dim();
  const double scale = std::max(1.0, h.max_abs());
  PauliDecomposition d;
  d.dim = dim;
  for (const PauliLabel& label : pauli_basis(dim)) {
    const QMatrix p = label_matrix(label);
    cplx c{};
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < dim; ++k) c += p(i, k) * h(k, i);  // tr(P H), P Hermitian
    c /= static_cast<double>(dim);
    if (std::abs(c.imag()) > 1e-10 * scale)
      throw HermiticityError("pauli_decompose: coefficient came out complex");
    const double value = c.real();
    if (std::abs(value) > 1e-14 * scale) d.terms.emplace(label, value);
  }
  return d;
}

QMatrix pauli_compose(const PauliDecomposition& d) {
  if (d.dim != 2 && d.dim != 4)
    throw DimensionError("pauli_compose: dimension must be 2 or 4");
  QMatrix h = QMatrix::zero(d.dim);
  for (const auto& [label, value] : d.terms) {
    if (label.dim() != d.dim)
      throw DimensionError("pauli_compose: label \"" + label.letters +
                           "\" does not match dimension");
    h = h + value * label_matrix(label);
  }
  return h;
}

}  // namespace gateforge
