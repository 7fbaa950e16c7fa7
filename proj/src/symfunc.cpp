#include "framebound/symfunc.hpp"

#include "framebound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <type_traits>

namespace framebound::symfunc {

SymFuncExpansion::SymFuncExpansion(int degree) : degree_(degree) {
  if (degree < 1 || degree > kMaxPartitionDegree) {
    throw domain_error("symmetric-function degree must satisfy 1 <= p <= 64");
  }
}

void SymFuncExpansion::set(const Partition& key, Rational coeff) {
  if (key.sum() != degree_) {
    throw domain_error("partition does not match expansion degree");
  }
  if (coeff == 0) {
    terms_.erase(key);
  } else {
    terms_[key] = std::move(coeff);
  }
}

Rational SymFuncExpansion::coeff(const Partition& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational SymFuncExpansion::coefficient_sum() const {
  Rational sum = 0;
  for (const auto& [key, value] : terms_) {
    sum += value;
  }
  return sum;
}

std::string SymFuncExpansion::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream out;
  bool first = true;
  // SAGE prints power-sum terms in increasing lexicographic order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Rational& c = it->second;
    if (!first) {
      out << (c < 0 ? " - " : " + ");
    } else if (c < 0) {
      out << "-";
    }
    first = false;
    const Rational magnitude = c < 0 ? Rational(-c) : c;
    if (magnitude != 1) {
      out << rational_string(magnitude) << "*";
    }
    out << "p[";
    const auto& parts = it->first.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i > 0) {
        out << ",";
      }
      out << parts[i];
    }
    out << "]";
  }
  return out.str();
}

SymFuncExpansion cycle_index_terms(int p) {
  SymFuncExpansion z(p);
  for (const Partition& lambda : enumerate_partitions(p)) {
    BigInt denom = 1;
    for (const auto& [part, count] : lambda.multiplicities()) {
      for (int i = 0; i < count; ++i) {
        denom *= part;
      }
      denom *= factorial(count);
    }
    z.set(lambda, Rational(BigInt(1), denom));
  }
  return z;
}

SymFuncExpansion theta_scale(const SymFuncExpansion& f, const Rational& q) {
  if (q == 0) {
    throw domain_error("theta scaling factor must be nonzero");
  }
  SymFuncExpansion scaled(f.degree());
  for (const auto& [lambda, coeff] : f.terms()) {
    Rational factor = 1;
    for (int i = 0; i < lambda.length(); ++i) {
      factor *= q;
    }
    scaled.set(lambda, coeff * factor);
  }
  return scaled;
}

namespace {

template <typename Scalar>
Scalar power_sum(std::span<const Scalar> values, int k) {
  Scalar sum = 0;
  for (const Scalar& v : values) {
    Scalar term = v;
    for (int i = 1; i < k; ++i) {
      term *= v;
    }
    sum += term;
  }
  return sum;
}

template <typename Scalar>
Scalar eval_powersum_impl(const SymFuncExpansion& f,
                          std::span<const Scalar> values) {
  if (values.empty()) {
    throw domain_error("eval_powersum requires at least one value");
  }
  // p_k only depends on k, so cache per distinct part size.
  std::map<int, Scalar> cache;
  Scalar total = 0;
  for (const auto& [lambda, coeff] : f.terms()) {
    Scalar product;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      product = coeff;
    } else {
      product = to_double(coeff);
    }
    for (const int part : lambda.parts()) {
      auto it = cache.find(part);
      if (it == cache.end()) {
        it = cache.emplace(part, power_sum(values, part)).first;
      }
      product *= it->second;
    }
    total += product;
  }
  return total;
}

template <typename Scalar>
Scalar eval_monomial_impl(const Partition& lambda,
                          std::span<const Scalar> values) {
  const int n = static_cast<int>(values.size());
  if (lambda.length() > n) {
    return Scalar(0);
  }
  const auto groups = lambda.multiplicities();
  std::vector<bool> used(values.size(), false);

  // Sum over all assignments of the exponent multiset to distinct
  // variables: for each group of equal parts choose an index subset.
  std::function<Scalar(std::size_t)> over_groups =
      [&](std::size_t g) -> Scalar {
    if (g == groups.size()) {
      return Scalar(1);
    }
    const auto [exponent, count] = groups[g];
    std::vector<int> chosen;
    Scalar total = 0;
    std::function<void(int, int)> choose = [&](int start, int needed) {
      if (needed == 0) {
        Scalar product = 1;
        for (const int idx : chosen) {
          Scalar term = values[idx];
          for (int e = 1; e < exponent; ++e) {
            term *= values[idx];
          }
          product *= term;
        }
        for (const int idx : chosen) {
          used[idx] = true;
        }
        total += product * over_groups(g + 1);
        for (const int idx : chosen) {
          used[idx] = false;
        }
        return;
      }
      for (int i = start; i <= n - needed; ++i) {
        if (used[i]) {
          continue;
        }
        chosen.push_back(i);
        choose(i + 1, needed - 1);
        chosen.pop_back();
      }
    };
    choose(0, count);
    return total;
  };
  return over_groups(0);
}

} // namespace

Rational eval_powersum(const SymFuncExpansion& f,
                       std::span<const Rational> values) {
  return eval_powersum_impl(f, values);
}

double eval_powersum(const SymFuncExpansion& f,
                     std::span<const double> values) {
  return eval_powersum_impl(f, values);
}

Rational eval_monomial(const Partition& lambda,
                       std::span<const Rational> values) {
  return eval_monomial_impl(lambda, values);
}

double eval_monomial(const Partition& lambda,
                     std::span<const double> values) {
  return eval_monomial_impl(lambda, values);
}

Rational chi2_moment(std::span<const Rational> weights, int p, bool doubled) {
  if (p < 1 || p > kMaxPartitionDegree) {
    throw domain_error("chi2_moment order must satisfy 1 <= p <= 64");
  }
  if (weights.empty()) {
    throw domain_error("chi2_moment requires at least one weight");
  }
  for (const Rational& w : weights) {
    if (w < 0) {
      throw domain_error("chi2_moment weights must be nonnegative");
    }
  }

  const BigInt two_p = BigInt(1) << p;
  const Rational scale = Rational(two_p * factorial(p));
  const SymFuncExpansion z = cycle_index_terms(p);

  if (doubled) {
    // Z(S_p) equals h_p in the power-sum basis, so this is 2^p p! h_p(a).
    return scale * eval_powersum(z, weights);
  }

  const SymFuncExpansion halved = theta_scale(z, Rational(1, 2));
  const Rational via_cycle = scale * eval_powersum(halved, weights);

  // Independent monomial-basis route: (p!/2^p) sum_lambda prod C(2k,k) m_lambda.
  Rational monomial_sum = 0;
  for (const Partition& lambda : enumerate_partitions(p)) {
    BigInt product = 1;
    for (const int part : lambda.parts()) {
      product *= binomial(2 * part, part);
    }
    monomial_sum += Rational(product) * eval_monomial(lambda, weights);
  }
  const Rational via_monomial =
      Rational(factorial(p), two_p) * monomial_sum;

  if (via_cycle != via_monomial) {
    throw consistency_error(
        "chi2_moment: cycle-index and monomial routes disagree");
  }
  return via_cycle;
}

} // namespace framebound::symfunc
