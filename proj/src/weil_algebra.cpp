#include "weiljets/weil_algebra.hpp"

#include <sstream>

#include "weiljets/linalg.hpp"

namespace weiljets {

namespace {

const PadicNumber& tensor_at(const std::vector<PadicNumber>& c, int dim, int i, int j, int k) {
  return c[(static_cast<std::size_t>(i) * dim + j) * dim + k];
}

bool entry_is(const PadicNumber& value, int expected, long threshold) {
  PadicNumber want = PadicNumber::from_integer(expected, value.prime(), value.precision());
  return is_zero_at(value - want, threshold);
}

std::string idx4(int i, int j, int k, int r) {
  std::ostringstream out;
  out << "(" << i + 1 << "," << j + 1 << "," << k + 1 << "," << r + 1 << ")";
  return out.str();
}

// products of a coefficient vector with basis element alpha_j
std::vector<PadicNumber> multiply_by_basis(const std::vector<PadicNumber>& a, int j,
                                           const std::vector<PadicNumber>& c, int dim,
                                           std::int64_t p, int n) {
  std::vector<PadicNumber> out(dim, PadicNumber::zero(p, n));
  for (int i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (int k = 0; k < dim; ++k) {
      const PadicNumber& cijk = tensor_at(c, dim, i, j, k);
      if (cijk.is_zero()) continue;
      out[k] += a[i] * cijk;
    }
  }
  return out;
}

// dimension of the span plus a reduced basis, at working precision
std::vector<std::vector<PadicNumber>> reduced_span(std::vector<std::vector<PadicNumber>> vectors,
                                                   long threshold) {
  if (vectors.empty()) return {};
  Elimination e = eliminate(std::move(vectors), threshold);
  std::vector<std::vector<PadicNumber>> basis(e.reduced.begin(), e.reduced.begin() + e.rank);
  return basis;
}

}  // namespace

std::optional<std::array<int, 4>> associativity_witness(const std::vector<PadicNumber>& constants,
                                                        int dim, long threshold, Execution exec) {
  const std::int64_t p = constants.empty() ? 2 : constants[0].prime();
  const int n = constants.empty() ? 1 : constants[0].precision();
  auto violates = [&](int i, int j, int k, int r) {
    PadicNumber lhs = PadicNumber::zero(p, n);
    PadicNumber rhs = PadicNumber::zero(p, n);
    for (int m = 0; m < dim; ++m) {
      lhs += tensor_at(constants, dim, i, j, m) * tensor_at(constants, dim, m, k, r);
      rhs += tensor_at(constants, dim, j, k, m) * tensor_at(constants, dim, i, m, r);
    }
    return !is_zero_at(lhs - rhs, threshold);
  };

  std::optional<std::array<int, 4>> witness;
  auto offer = [&](const std::array<int, 4>& w) {
    if (!witness || w < *witness) witness = w;
  };

  if (exec == Execution::serial) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int r = 0; r < dim; ++r)
            if (violates(i, j, k, r)) return std::array<int, 4>{i, j, k, r};
    return std::nullopt;
  }

#pragma omp parallel for collapse(2) schedule(static)
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      std::optional<std::array<int, 4>> local;
      for (int k = 0; k < dim && !local; ++k)
        for (int r = 0; r < dim; ++r)
          if (violates(i, j, k, r)) {
            local = std::array<int, 4>{i, j, k, r};
            break;
          }
      if (local) {
#pragma omp critical(weiljets_assoc_witness)
        offer(*local);
      }
    }
  }
  return witness;
}

AlgebraPtr WeilAlgebra::build(std::int64_t prime, int precision, int dim,
                              std::vector<PadicNumber> constants, Execution exec) {
  if (dim < 1) throw AlgebraError("dimension must be >= 1");
  if (constants.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw AlgebraError("structure constants must be an l*l*l tensor");
  const long threshold = precision;

  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      if (!entry_is(tensor_at(constants, dim, 0, j, k), j == k ? 1 : 0, threshold))
        throw AlgebraError("unit law violated at c(1," + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + ")");
      if (!entry_is(tensor_at(constants, dim, j, 0, k), j == k ? 1 : 0, threshold))
        throw AlgebraError("unit law violated at c(" + std::to_string(j + 1) + ",1," +
                           std::to_string(k + 1) + ")");
    }

  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (!is_zero_at(tensor_at(constants, dim, i, j, k) - tensor_at(constants, dim, j, i, k),
                        threshold))
          throw AlgebraError("non-commutative at " + idx4(i, j, k, k));

  if (auto w = associativity_witness(constants, dim, threshold, exec))
    throw AlgebraError("non-associative at " + idx4((*w)[0], (*w)[1], (*w)[2], (*w)[3]));

  // nilpotency of the ideal spanned by alpha_2..alpha_l, by iterated ideal products
  int nilpotency_index = 1;
  if (dim > 1) {
    std::vector<std::vector<PadicNumber>> basis;
    for (int j = 1; j < dim; ++j) {
      std::vector<PadicNumber> e(dim, PadicNumber::zero(prime, precision));
      e[j] = PadicNumber::from_integer(1, prime, precision);
      basis.push_back(std::move(e));
    }
    basis = reduced_span(std::move(basis), threshold);
    int power = 1;
    while (!basis.empty()) {
      std::vector<std::vector<PadicNumber>> products;
      for (const auto& b : basis)
        for (int j = 1; j < dim; ++j)
          products.push_back(multiply_by_basis(b, j, constants, dim, prime, precision));
      auto next = reduced_span(std::move(products), threshold);
      if (next.size() >= basis.size())
        throw AlgebraError("ideal not nilpotent (power " + std::to_string(power + 1) +
                           " has dimension " + std::to_string(next.size()) + ")");
      basis = std::move(next);
      ++power;
    }
    nilpotency_index = power;
  }

  return AlgebraPtr(
      new WeilAlgebra(prime, precision, dim, std::move(constants), nilpotency_index));
}

AlgebraPtr WeilAlgebra::dual_numbers(std::int64_t prime, int precision) {
  return jet_algebra(prime, precision, 1);
}

AlgebraPtr WeilAlgebra::jet_algebra(std::int64_t prime, int precision, int order) {
  if (order < 1) throw AlgebraError("jet order must be >= 1");
  int dim = order + 1;
  std::vector<PadicNumber> c(static_cast<std::size_t>(dim) * dim * dim,
                             PadicNumber::zero(prime, precision));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i + j < dim)
        c[(static_cast<std::size_t>(i) * dim + j) * dim + (i + j)] =
            PadicNumber::from_integer(1, prime, precision);
  return build(prime, precision, dim, std::move(c));
}

bool WeilAlgebra::equivalent(const WeilAlgebra& other) const {
  if (this == &other) return true;
  if (prime_ != other.prime_ || dim_ != other.dim_) return false;
  for (std::size_t idx = 0; idx < constants_.size(); ++idx)
    if (constants_[idx] != other.constants_[idx]) return false;
  return true;
}

WeilElement::WeilElement(AlgebraPtr algebra, std::vector<PadicNumber> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw std::invalid_argument("null algebra");
  if (static_cast<int>(coeffs_.size()) != algebra_->dim())
    throw std::invalid_argument("coefficient count does not match algebra dimension");
  for (const auto& c : coeffs_)
    if (c.prime() != algebra_->prime())
      throw std::invalid_argument("coefficient prime does not match algebra");
}

WeilElement WeilElement::zero(const AlgebraPtr& algebra) {
  return WeilElement(algebra,
                     std::vector<PadicNumber>(algebra->dim(), algebra->scalar_zero()));
}

WeilElement WeilElement::one(const AlgebraPtr& algebra) {
  return from_scalar(algebra, algebra->scalar_one());
}

WeilElement WeilElement::from_scalar(const AlgebraPtr& algebra, const PadicNumber& value) {
  auto out = zero(algebra);
  out.coeffs_[0] = value;
  return out;
}

WeilElement WeilElement::basis(const AlgebraPtr& algebra, int index) {
  auto out = zero(algebra);
  out.coeffs_.at(index) = algebra->scalar_one();
  return out;
}

BigRational WeilElement::norm() const {
  BigRational best(0);
  for (const auto& c : coeffs_) best = std::max(best, c.norm());
  return best;
}

void WeilElement::require_same_algebra(const WeilElement& other) const {
  if (!algebra_->equivalent(*other.algebra_)) throw std::invalid_argument("algebra mismatch");
}

WeilElement WeilElement::operator+(const WeilElement& other) const {
  require_same_algebra(other);
  auto out = coeffs_;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.coeffs_[j];
  return WeilElement(algebra_, std::move(out));
}

WeilElement WeilElement::operator-(const WeilElement& other) const { return *this + (-other); }

WeilElement WeilElement::operator-() const {
  auto out = coeffs_;
  for (auto& c : out) c = -c;
  return WeilElement(algebra_, std::move(out));
}

WeilElement WeilElement::operator*(const WeilElement& other) const {
  require_same_algebra(other);
  const int l = algebra_->dim();
  std::vector<PadicNumber> out(l, algebra_->scalar_zero());
  for (int i = 0; i < l; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (int j = 0; j < l; ++j) {
      if (other.coeffs_[j].is_zero()) continue;
      PadicNumber prod = coeffs_[i] * other.coeffs_[j];
      for (int k = 0; k < l; ++k) {
        const PadicNumber& c = algebra_->c(i, j, k);
        if (c.is_zero()) continue;
        out[k] += prod * c;
      }
    }
  }
  return WeilElement(algebra_, std::move(out));
}

WeilElement WeilElement::scale(const PadicNumber& s) const {
  auto out = coeffs_;
  for (auto& c : out) c *= s;
  return WeilElement(algebra_, std::move(out));
}

WeilElement WeilElement::inverse() const {
  const PadicNumber& head = project();
  if (head.is_inexact_zero())
    throw PrecisionError("inverting an element indistinguishable from a nilpotent");
  if (head.is_zero()) throw std::domain_error("element with zero projection is not invertible");
  // a = head * (1 + w) with w nilpotent; invert with a finite geometric series
  PadicNumber head_inv = head.inverse();
  WeilElement w = scale(head_inv) - one(algebra_);
  WeilElement acc = one(algebra_);
  WeilElement term = one(algebra_);
  for (int k = 1; k < algebra_->nilpotency_index(); ++k) {
    term = term * (-w);
    acc = acc + term;
  }
  return acc.scale(head_inv);
}

WeilElement WeilElement::pow(unsigned long exponent) const {
  WeilElement result = one(algebra_);
  WeilElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

bool WeilElement::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool WeilElement::operator==(const WeilElement& other) const {
  if (!algebra_->equivalent(*other.algebra_)) return false;
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    if (coeffs_[j] != other.coeffs_[j]) return false;
  return true;
}

std::string WeilElement::to_string() const {
  std::ostringstream out;
  for (int j = 0; j < algebra_->dim(); ++j) {
    if (j > 0) out << " + ";
    out << coeffs_[j].to_string();
    if (j == 1) out << "*eps";
    if (j > 1) out << "*eps^" << j;
  }
  return out.str();
}

bool congruent_mod_pk(const WeilElement& a, const WeilElement& b, long k) {
  if (!a.algebra()->equivalent(*b.algebra())) return false;
  for (int j = 0; j < a.algebra()->dim(); ++j)
    if (!congruent_mod_pk(a.coeff(j), b.coeff(j), k)) return false;
  return true;
}

}  // namespace weiljets
