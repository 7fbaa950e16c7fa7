#pragma once

#include "framebound/partition.hpp"
#include "framebound/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace framebound::symfunc {

/// A symmetric function of homogeneous degree p written in the power-sum
/// basis: sum over partitions lambda of p of coeff(lambda) * p_lambda.
/// Zero coefficients are never stored.
class SymFuncExpansion {
public:
  using TermMap = std::map<Partition, Rational, DecLexLess>;

  explicit SymFuncExpansion(int degree);

  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void set(const Partition& key, Rational coeff);
  Rational coeff(const Partition& key) const;

  Rational coefficient_sum() const;

  /// Text form matching the SAGE power-sum layout, terms in increasing
  /// lexicographic order: "1/384*p[1,1,1,1] + ... + 1/8*p[4]".
  std::string to_string() const;

  bool operator==(const SymFuncExpansion&) const = default;

private:
  int degree_;
  TermMap terms_;
};

/// Cycle index Z(S_p) of the symmetric group in the power-sum basis:
/// coefficient of p_lambda is 1 / prod_k (k^{j_k} j_k!) where j_k is the
/// number of parts of size k. Coefficients sum to 1.
SymFuncExpansion cycle_index_terms(int p);

/// Alphabet-scaling automorphism: multiplies the coefficient of p_lambda
/// by q^(number of parts). theta_scale(theta_scale(f,q), 1/q) == f.
SymFuncExpansion theta_scale(const SymFuncExpansion& f, const Rational& q);

/// Evaluates sum_lambda coeff(lambda) * prod_{k in lambda} (v_1^k+...+v_n^k).
Rational eval_powersum(const SymFuncExpansion& f,
                       std::span<const Rational> values);
double eval_powersum(const SymFuncExpansion& f, std::span<const double> values);

/// Monomial symmetric polynomial m_lambda: the sum of all distinct
/// monomials with exponent multiset lambda. Zero when there are fewer
/// variables than parts.
Rational eval_monomial(const Partition& lambda,
                       std::span<const Rational> values);
double eval_monomial(const Partition& lambda, std::span<const double> values);

/// E (sum_i a_i X_i^2)^p for independent standard normals X_i, computed as
/// 2^p p! * Z(S_p) at the halved alphabet, cross-checked exactly against
/// the monomial-basis expansion (p!/2^p) sum_lambda prod C(2k,k) m_lambda.
/// With doubled=true each weight appears twice (X_i^2 + Y_i^2), which
/// collapses to 2^p p! h_p(a).
Rational chi2_moment(std::span<const Rational> weights, int p,
                     bool doubled = false);

} // namespace framebound::symfunc
