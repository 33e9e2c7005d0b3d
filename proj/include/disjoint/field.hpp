#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <regex>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "disjoint/integer.hpp"
#include "disjoint/matrix.hpp"

namespace disjoint {

/// The field in which matrix entries are interpreted: the rationals or GF(p).
class FieldSpec {
 public:
  enum class Kind { Rationals, PrimeField };

  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("GF(" + std::to_string(p) + "): modulus is not prime");
    return FieldSpec(Kind::PrimeField, p);
  }

  /// Accepts "Q" or "GF(p)".
  static FieldSpec parse(const std::string& text) {
    if (text == "Q") return rationals();
    static const std::regex gf(R"(GF\((\d{1,9})\))");
    std::smatch m;
    if (std::regex_match(text, m, gf)) return prime(std::stoull(m[1].str()));
    throw std::invalid_argument("unknown field '" + text + "' (expected \"Q\" or \"GF(p)\")");
  }

  Kind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return p_; }

  std::string to_string() const { return kind_ == Kind::Rationals ? "Q" : "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  static bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

template <class F>
concept ExactField = requires(const F f, const typename F::value_type a, const Rational q) {
  { f.from_rational(q) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
};

struct RationalField {
  using value_type = Rational;
  value_type from_rational(const Rational& q) const { return q; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
};

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (!FieldSpec::is_prime(p)) throw std::invalid_argument("PrimeField: modulus is not prime");
    if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("PrimeField: modulus must be below 2^32");
  }

  std::uint64_t modulus() const noexcept { return p_; }

  value_type from_integer(const Integer& z) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }

  value_type from_rational(const Rational& q) const {
    const value_type den = from_integer(q.get_den());
    if (den == 0)
      throw std::domain_error("rational " + q.get_str() + " has a denominator divisible by " + std::to_string(p_));
    return mul(from_integer(q.get_num()), inv(den));
  }

  bool is_zero(value_type a) const { return a == 0; }
  value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }

  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    // a^(p-2)
    value_type result = 1, base = a % p_;
    for (std::uint64_t e = p_ - 2; e > 0; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }

 private:
  std::uint64_t p_;
};

using AnyField = std::variant<RationalField, PrimeField>;

inline AnyField make_field(const FieldSpec& spec) {
  if (spec.kind() == FieldSpec::Kind::Rationals) return RationalField{};
  return PrimeField(spec.modulus());
}

/// Rank by Gaussian elimination over field f; consumes its working copy.
template <ExactField F>
std::size_t rank_in_place(const F& f, std::vector<std::vector<typename F::value_type>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && f.is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    const auto pivot_inv = f.inv(rows[rank][c]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (f.is_zero(rows[r][c])) continue;
      const auto factor = f.mul(rows[r][c], pivot_inv);
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

template <class T>
std::size_t rank_over_field(const Matrix<T>& a, const FieldSpec& spec) {
  return std::visit(
      [&](const auto& f) {
        using V = typename std::decay_t<decltype(f)>::value_type;
        std::vector<std::vector<V>> rows(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) {
          rows[i].reserve(a.cols());
          for (const auto& x : a.row(i)) rows[i].push_back(f.from_rational(Rational(x)));
        }
        return rank_in_place(f, rows);
      },
      make_field(spec));
}

/// Incrementally maintained row-echelon basis of a subspace. Adding a vector
/// reports whether it was independent of the vectors already held.
template <ExactField F>
class EchelonBasis {
 public:
  using value_type = typename F::value_type;
  using Vector = std::vector<value_type>;

  EchelonBasis(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return reduced_.size(); }

  /// Residue of v modulo the current span; zero iff v is in the span.
  Vector reduce(Vector v) const {
    for (std::size_t i = 0; i < reduced_.size(); ++i) {
      const std::size_t c = pivots_[i];
      if (field_.is_zero(v[c])) continue;
      // stored rows are normalized so the pivot entry is one
      const value_type factor = v[c];
      for (std::size_t j = c; j < dim_; ++j) v[j] = field_.sub(v[j], field_.mul(factor, reduced_[i][j]));
    }
    return v;
  }

  bool contains(const Vector& v) const { return !leading_column(reduce(v)).has_value(); }

  bool add(Vector v) {
    v = reduce(std::move(v));
    const auto lead = leading_column(v);
    if (!lead) return false;
    const value_type scale = field_.inv(v[*lead]);
    for (std::size_t j = *lead; j < dim_; ++j) v[j] = field_.mul(v[j], scale);
    // keep rows ordered by pivot so reduce() is a single forward sweep
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < *lead) ++at;
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), *lead);
    reduced_.insert(reduced_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
    return true;
  }

 private:
  std::optional<std::size_t> leading_column(const Vector& v) const {
    for (std::size_t j = 0; j < dim_; ++j)
      if (!field_.is_zero(v[j])) return j;
    return std::nullopt;
  }

  F field_;
  std::size_t dim_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> reduced_;
};

}  // namespace disjoint
