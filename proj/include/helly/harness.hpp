#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helly/budgets.hpp"
#include "helly/common_eigenvectors.hpp"
#include "helly/errors.hpp"
#include "helly/invariant_subspaces.hpp"
#include "helly/sharpness.hpp"

namespace helly {

/// Result of a Helly sweep: every size-min(k, n) subfamily is tested for
/// the property, then the full family.  Checking exactly that size
/// suffices, because the property is inherited by subsets.
///
/// implication_failed records "all subsets pass, full family fails"; the
/// contradiction flag is raised only when that happens inside the regime
/// the theorems cover (k >= floor(3d/2) for eigenvectors; l >= 2d-1 with a
/// distinct-spectrum member for invariant subspaces), where it would
/// falsify the corresponding theorem.
struct HellyReport {
  std::string family_id;
  std::size_t k = 0;            // requested subset size
  std::size_t subset_size = 0;  // min(k, n) actually swept
  std::uint64_t subsets_checked = 0;
  std::vector<std::vector<std::size_t>> failing_subsets;  // ascending index lists
  bool full_family_ok = false;
  bool degenerate = false;  // n < k: the sweep is just the full family
  bool implication_failed = false;
  bool contradiction = false;
  std::string certificate;  // human-readable account when the implication fails
};

namespace detail {

template <typename Visit>
inline void for_each_combination(std::size_t n, std::size_t k, Visit visit) {
  std::vector<std::size_t> comb(k);
  for (std::size_t i = 0; i < k; ++i) comb[i] = i;
  if (k > n) return;
  while (true) {
    if (!visit(comb)) return;
    bool advanced = false;
    std::size_t i = k;
    while (i-- > 0) {
      if (comb[i] != i + n - k) {
        ++comb[i];
        for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

inline bigint binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  bigint out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    out *= static_cast<unsigned>(n - i);
    out /= static_cast<unsigned>(i + 1);
  }
  return out;
}

template <typename HasProperty>
inline HellyReport helly_sweep(const OperatorFamily& fam, std::size_t k,
                               const Budgets& budgets, const std::string& family_id,
                               bool regime, HasProperty has_property) {
  if (k < 1) throw input_error("subset size must be at least 1");
  HellyReport report;
  report.family_id = family_id;
  report.k = k;
  report.subset_size = std::min(k, fam.size());
  report.degenerate = fam.size() < k;

  if (binomial(fam.size(), report.subset_size) > budgets.subsets) {
    throw budget_error("C(" + std::to_string(fam.size()) + ", " +
                       std::to_string(report.subset_size) +
                       ") subsets exceed the budget of " + std::to_string(budgets.subsets));
  }

  std::optional<bool> full_from_sweep;
  for_each_combination(fam.size(), report.subset_size, [&](const std::vector<std::size_t>& comb) {
    bool ok = has_property(fam.subfamily(comb));
    ++report.subsets_checked;
    if (!ok) report.failing_subsets.push_back(comb);
    if (comb.size() == fam.size()) full_from_sweep = ok;
    return true;
  });

  report.full_family_ok = full_from_sweep ? *full_from_sweep : has_property(fam);
  report.implication_failed = report.failing_subsets.empty() && !report.full_family_ok;
  if (report.implication_failed) {
    report.certificate = "all " + std::to_string(report.subsets_checked) + " subsets of size " +
                         std::to_string(report.subset_size) +
                         " have the property but the full family of " +
                         std::to_string(fam.size()) + " does not";
    report.contradiction = regime;
  }
  return report;
}

}  // namespace detail

/// Sweep for the common-eigenvector property with threshold k.  The
/// contradiction regime is k >= floor(3d/2), the proven Helly number.
inline HellyReport helly_check_eigenvectors(const OperatorFamily& fam, std::size_t k,
                                            const Budgets& budgets = Budgets::from_env(),
                                            const std::string& family_id = "") {
  bool regime = k >= 3 * fam.dim() / 2;
  return detail::helly_sweep(fam, k, budgets, family_id, regime,
                             [](const OperatorFamily& sub) {
                               return has_common_eigenvector(sub).has_value();
                             });
}

/// Sweep for the common non-trivial invariant subspace property with
/// threshold l, decided by the brute-force oracle (finite fields only).
/// The contradiction regime is l >= 2d-1 together with a distinct-spectrum
/// member, the hypothesis of the invariant-subspace theorem.
inline HellyReport helly_check_invariant(const OperatorFamily& fam, std::size_t l,
                                         const Budgets& budgets = Budgets::from_env(),
                                         const std::string& family_id = "") {
  bool distinct = false;
  for (const NamedOperator& op : fam.operators()) {
    if (distinct_spectrum_basis(op.matrix, op.name)) {
      distinct = true;
      break;
    }
  }
  bool regime = distinct && l >= 2 * fam.dim() - 1;
  return detail::helly_sweep(fam, l, budgets, family_id, regime,
                             [&](const OperatorFamily& sub) {
                               return brute_force_common_invariant(sub, budgets).has_value();
                             });
}

enum class GeneratorStrategy {
  uniform,              // independent uniform entries
  planted_eigenvector,  // all operators share a hidden eigenvector
  planted_invariant,    // all operators share a hidden invariant subspace
  block_scalar,         // scalars on the blocks of a hidden decomposition
  perturbed_sharpness,  // sharpness family with one member replaced
};

inline GeneratorStrategy parse_strategy(const std::string& name) {
  if (name == "uniform") return GeneratorStrategy::uniform;
  if (name == "planted_eigenvector") return GeneratorStrategy::planted_eigenvector;
  if (name == "planted_invariant") return GeneratorStrategy::planted_invariant;
  if (name == "block_scalar") return GeneratorStrategy::block_scalar;
  if (name == "perturbed_sharpness") return GeneratorStrategy::perturbed_sharpness;
  throw input_error("unknown generator strategy \"" + name + "\"");
}

namespace detail {

/// Deterministic scalar source: mt19937_64 with explicit modulo reduction,
/// so streams are identical on every platform.  Rational entries are small
/// integers, which keeps test arithmetic readable.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

  Scalar scalar(const FieldSpec& field) {
    if (field.is_prime_field()) {
      return Scalar(field, bigint(below(static_cast<std::uint64_t>(field.modulus()))));
    }
    return Scalar(field, bigint(static_cast<std::int64_t>(below(19)) - 9));
  }

  Scalar nonzero_scalar(const FieldSpec& field) {
    while (true) {
      Scalar s = scalar(field);
      if (!s.is_zero()) return s;
    }
  }

  Matrix matrix(const FieldSpec& field, std::size_t rows, std::size_t cols) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar(field);
    }
    return m;
  }

  Matrix invertible_matrix(const FieldSpec& field, std::size_t n) {
    while (true) {
      Matrix m = matrix(field, n, n);
      if (rank(m) == n) return m;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

/// Deterministic family generator for property tests.  Same (d, field, n,
/// seed, strategy) always yields the same family.
///
/// Strategies:
///   uniform             entries drawn independently (GF(p): uniform
///                       residues; Q: integers in [-9, 9]).
///   planted_eigenvector matrices with first column (lambda, 0, ..., 0),
///                       conjugated by a seeded invertible P; all share the
///                       eigenvector P e_1.
///   planted_invariant   block upper triangular with a seeded split
///                       m in [1, d-1], conjugated by P; all preserve
///                       P span(e_1..e_m).
///   block_scalar        scalar on each block of a seeded partition of the
///                       coordinates, conjugated by P; every block span is
///                       a common invariant subspace.
///   perturbed_sharpness the floor(3d/2)-operator sharpness family
///                       conjugated by P, with one seeded member replaced
///                       by a uniform matrix, then truncated or padded
///                       (with uniform matrices) to n operators.
inline OperatorFamily generate_family(std::size_t d, const FieldSpec& field, std::size_t n,
                                      std::uint64_t seed, GeneratorStrategy strategy) {
  if (d < 2) throw input_error("generate_family: dimension must be at least 2");
  if (n < 1) throw input_error("generate_family: need at least one operator");
  detail::SeededRng rng(seed);
  std::vector<NamedOperator> ops;
  auto name = [](std::size_t i) { return "A" + std::to_string(i + 1); };

  switch (strategy) {
    case GeneratorStrategy::uniform: {
      for (std::size_t i = 0; i < n; ++i) ops.push_back({name(i), rng.matrix(field, d, d)});
      break;
    }
    case GeneratorStrategy::planted_eigenvector: {
      Matrix p = rng.invertible_matrix(field, d);
      Matrix p_inv = inverse(p);
      for (std::size_t i = 0; i < n; ++i) {
        Matrix m = rng.matrix(field, d, d);
        for (std::size_t r = 1; r < d; ++r) m.at(r, 0) = Scalar::zero(field);
        ops.push_back({name(i), p * m * p_inv});
      }
      break;
    }
    case GeneratorStrategy::planted_invariant: {
      Matrix p = rng.invertible_matrix(field, d);
      Matrix p_inv = inverse(p);
      std::size_t split = 1 + rng.below(d - 1);
      for (std::size_t i = 0; i < n; ++i) {
        Matrix m = rng.matrix(field, d, d);
        for (std::size_t r = split; r < d; ++r) {
          for (std::size_t c = 0; c < split; ++c) m.at(r, c) = Scalar::zero(field);
        }
        ops.push_back({name(i), p * m * p_inv});
      }
      break;
    }
    case GeneratorStrategy::block_scalar: {
      Matrix p = rng.invertible_matrix(field, d);
      Matrix p_inv = inverse(p);
      std::vector<std::size_t> block_of(d);
      std::size_t blocks = 2 + rng.below(d - 1);  // at least 2 so spans are proper
      if (blocks > d) blocks = d;
      for (std::size_t i = 0; i < d; ++i) {
        block_of[i] = i < blocks ? i : rng.below(blocks);  // every block non-empty
      }
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Scalar> per_block;
        for (std::size_t b = 0; b < blocks; ++b) per_block.push_back(rng.scalar(field));
        Matrix m(field, d, d);
        for (std::size_t r = 0; r < d; ++r) m.at(r, r) = per_block[block_of[r]];
        ops.push_back({name(i), p * m * p_inv});
      }
      break;
    }
    case GeneratorStrategy::perturbed_sharpness: {
      OperatorFamily base = build_sharpness_family(d, field);
      Matrix p = rng.invertible_matrix(field, d);
      Matrix p_inv = inverse(p);
      std::size_t replaced = rng.below(base.size());
      for (std::size_t i = 0; i < n; ++i) {
        Matrix m = i < base.size() && i != replaced ? p * base[i].matrix * p_inv
                                                    : rng.matrix(field, d, d);
        ops.push_back({name(i), std::move(m)});
      }
      break;
    }
  }
  return OperatorFamily(field, d, std::move(ops));
}

}  // namespace helly
