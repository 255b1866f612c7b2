#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helly/budgets.hpp"
#include "helly/errors.hpp"

namespace helly {

/// Subsets of a ground set [q] = {1, ..., q} as bitmasks: bit i set means
/// element i+1 is in the subset.  q is capped at the word width.
using SetMask = std::uint64_t;

inline SetMask full_mask(int q) {
  return q == 64 ? ~SetMask{0} : (SetMask{1} << q) - 1;
}

inline std::vector<int> mask_elements(SetMask m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i) {
    if (m >> i & 1) out.push_back(i + 1);
  }
  return out;
}

inline SetMask mask_from_elements(int q, const std::vector<int>& elements) {
  SetMask m = 0;
  for (int e : elements) {
    if (e < 1 || e > q) {
      throw input_error("set element " + std::to_string(e) + " outside [1, " +
                        std::to_string(q) + "]");
    }
    m |= SetMask{1} << (e - 1);
  }
  return m;
}

inline std::string mask_to_string(SetMask m) {
  std::string out = "{";
  bool first = true;
  for (int e : mask_elements(m)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

/// A family M_1, ..., M_p of non-empty proper subsets of [q].  Duplicate
/// members are accepted (they make the union condition fail, which is the
/// correct verdict), but every member must be non-empty and proper.
class SetFamily {
 public:
  SetFamily(int q, std::vector<SetMask> members)
      : q_(q), members_(std::move(members)) {
    if (q_ < 1 || q_ > 63) throw input_error("set family: q must be in [1, 63]");
    for (SetMask m : members_) {
      if (m == 0) throw input_error("set family member is empty");
      if ((m & ~full_mask(q_)) != 0) {
        throw input_error("set family member has elements outside [q]");
      }
      if (m == full_mask(q_)) throw input_error("set family member equals [q]");
    }
  }

  int q() const { return q_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<SetMask>& members() const { return members_; }

  bool has_duplicates() const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      for (std::size_t j = i + 1; j < members_.size(); ++j) {
        if (members_[i] == members_[j]) return true;
      }
    }
    return false;
  }

 private:
  int q_;
  std::vector<SetMask> members_;
};

/// A violating index set together with its union: I non-empty with
/// M = union over I != [q] and the union unchanged by removing any single
/// member of I.
struct UnionWitness {
  SetMask index_set;  // bitmask over member indices (bit i = member i+1)
  SetMask union_set;  // bitmask over [q]
};

struct ConditionVerdict {
  bool holds;
  std::optional<UnionWitness> violating;  // set iff !holds
};

namespace detail {

// An index set I violates the condition iff its union is proper and no
// member contributes an element covered exactly once within I.
inline bool violates(const std::vector<SetMask>& members, SetMask index_set, SetMask full,
                     SetMask* union_out) {
  SetMask covered = 0, twice = 0;
  SetMask rest = index_set;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    SetMask m = members[static_cast<std::size_t>(i)];
    twice |= covered & m;
    covered |= m;
  }
  if (union_out) *union_out = covered;
  return covered != full && (covered & ~twice) == 0;
}

inline void check_subset_budget(std::size_t p, const Budgets& budgets) {
  if (p >= 64 || (std::uint64_t{1} << p) > budgets.index_subsets) {
    throw budget_error("set family scan over 2^" + std::to_string(p) +
                       " index subsets exceeds the budget of " +
                       std::to_string(budgets.index_subsets));
  }
}

}  // namespace detail

/// Checks the union condition: for every non-empty I, either the union over
/// I is all of [q] or some member of I is non-redundant.  When it fails,
/// reports the lexicographically least violating I (lexicographic on the
/// ascending index list, found by depth-first preorder over extensions).
inline ConditionVerdict lemma_condition_holds(const SetFamily& fam,
                                              const Budgets& budgets = Budgets::from_env()) {
  const std::size_t p = fam.size();
  detail::check_subset_budget(p, budgets);
  const SetMask full = full_mask(fam.q());
  const auto& members = fam.members();

  struct Frame { std::size_t next; SetMask index_set; };
  // Preorder DFS: visit {i}, then extensions by larger indices ascending.
  std::vector<Frame> stack;
  for (std::size_t i = p; i-- > 0;) {
    stack.push_back({i + 1, SetMask{1} << i});
  }
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    SetMask u = 0;
    if (detail::violates(members, f.index_set, full, &u)) {
      return ConditionVerdict{false, UnionWitness{f.index_set, u}};
    }
    for (std::size_t j = p; j-- > f.next;) {
      stack.push_back({j + 1, f.index_set | (SetMask{1} << j)});
    }
  }
  return ConditionVerdict{true, std::nullopt};
}

/// The contrapositive certificate used by the Theorem 4 pipeline: the first
/// violating I in smallest-size-then-lexicographic order, or nullopt when
/// the condition holds.  Any returned I has |I| >= 2, since a singleton's
/// only member is never redundant.
inline std::optional<UnionWitness> find_redundant_union_witness(
    const SetFamily& fam, const Budgets& budgets = Budgets::from_env()) {
  const std::size_t p = fam.size();
  detail::check_subset_budget(p, budgets);
  const SetMask full = full_mask(fam.q());
  const auto& members = fam.members();

  std::vector<std::size_t> comb;
  for (std::size_t size = 2; size <= p; ++size) {
    comb.assign(size, 0);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      SetMask index_set = 0;
      for (std::size_t i : comb) index_set |= SetMask{1} << i;
      SetMask u = 0;
      if (detail::violates(members, index_set, full, &u)) {
        return UnionWitness{index_set, u};
      }
      // next combination in lexicographic order
      bool advanced = false;
      std::size_t i = size;
      while (i-- > 0) {
        if (comb[i] != i + p - size) {
          ++comb[i];
          for (std::size_t j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return std::nullopt;
}

/// The two nested chains {1}, {1,2}, ..., {1,...,q-1} and {q}, {q,q-1},
/// ..., {q,...,2}: 2q-2 distinct members that satisfy the union condition,
/// showing the 2q-2 bound is attained.
inline SetFamily extremal_family(int q) {
  if (q < 2) throw input_error("extremal_family: q must be at least 2");
  std::vector<SetMask> members;
  SetMask up = 0;
  for (int k = 1; k <= q - 1; ++k) {
    up |= SetMask{1} << (k - 1);
    members.push_back(up);
  }
  SetMask down = 0;
  for (int k = q; k >= 2; --k) {
    down |= SetMask{1} << (k - 1);
    members.push_back(down);
  }
  return SetFamily(q, std::move(members));
}

struct BoundReport {
  int q;
  std::size_t family_size;          // 2q - 1
  std::uint64_t families_checked;
  bool all_fail;                    // every checked family fails the condition
  bool sampled;                     // randomized sampling instead of exhaustion
};

/// Verifies the p <= 2q-2 bound by scanning families of 2q-1 distinct
/// non-empty proper subsets: exhaustively for q <= 4, by seeded random
/// sampling for q = 5.  A family that satisfies the condition would
/// falsify the bound, so it aborts with contradiction_error.
inline BoundReport exhaustive_verify_bound(int q, std::uint64_t samples = 5000,
                                           const Budgets& budgets = Budgets::from_env(),
                                           std::uint64_t seed = 0x5e7fa317) {
  if (q < 1 || q > 5) {
    throw input_error("exhaustive_verify_bound: q must be in [1, 5] (got " +
                      std::to_string(q) + ")");
  }
  const std::size_t family_size = 2 * static_cast<std::size_t>(q) - 1;
  std::vector<SetMask> candidates;
  for (SetMask m = 1; m < full_mask(q); ++m) candidates.push_back(m);

  BoundReport report{q, family_size, 0, true, q == 5};

  auto check = [&](const std::vector<SetMask>& members) {
    SetFamily fam(q, members);
    ConditionVerdict verdict = lemma_condition_holds(fam, budgets);
    ++report.families_checked;
    if (verdict.holds) {
      std::string desc;
      for (SetMask m : members) desc += mask_to_string(m) + " ";
      throw contradiction_error(
          "family of " + std::to_string(family_size) + " subsets of [" +
          std::to_string(q) + "] satisfies the union condition, falsifying "
          "the 2q-2 bound: " + desc);
    }
  };

  if (candidates.size() < family_size) {
    return report;  // vacuous: no family of the required size exists
  }

  if (!report.sampled) {
    // All C(|candidates|, 2q-1) families of distinct members.
    std::vector<std::size_t> comb(family_size);
    for (std::size_t i = 0; i < family_size; ++i) comb[i] = i;
    std::vector<SetMask> members(family_size);
    while (true) {
      for (std::size_t i = 0; i < family_size; ++i) members[i] = candidates[comb[i]];
      check(members);
      std::size_t i = family_size;
      bool done = true;
      while (i-- > 0) {
        if (comb[i] != i + candidates.size() - family_size) {
          ++comb[i];
          for (std::size_t j = i + 1; j < family_size; ++j) comb[j] = comb[j - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) break;
    }
  } else {
    std::mt19937_64 rng(seed);
    std::vector<SetMask> pool = candidates;
    for (std::uint64_t s = 0; s < samples; ++s) {
      // Partial Fisher-Yates: a uniform random (2q-1)-subset of the pool.
      for (std::size_t i = 0; i < family_size; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
      }
      check(std::vector<SetMask>(pool.begin(), pool.begin() + family_size));
    }
  }
  return report;
}

}  // namespace helly
