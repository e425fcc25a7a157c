#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eonbam {

/// Traffic class index. Larger index = higher priority (0 Bronze, 1 Silver, 2 Gold).
using ClassIndex = int;

enum class BamKind { MAM, RDM, ATCS };

std::string_view to_string(BamKind kind);
/// Accepts "mam", "rdm", "atcs" in any case.
std::optional<BamKind> parse_bam_kind(std::string_view text);
inline constexpr BamKind kAllBamKinds[] = {BamKind::MAM, BamKind::RDM, BamKind::ATCS};

/// Per-class nominal pools of one link and the derived nested RDM constraints
/// RC_k = sum_{j >= k} pool_j.
class BamConfig {
 public:
  /// Throws ValidationError unless every pool is positive and they sum to capacity.
  BamConfig(std::vector<int> pools, int capacity);

  /// Pools as round(share% x capacity). Throws ValidationError if rounding
  /// leaves them not summing to capacity.
  static BamConfig from_shares(std::span<const double> share_percent, int capacity);

  int class_count() const { return static_cast<int>(pools_.size()); }
  int capacity() const { return capacity_; }
  const std::vector<int>& pools() const { return pools_; }
  int pool(ClassIndex c) const { return pools_.at(c); }
  const std::vector<int>& rdm_rc() const { return rc_; }

 private:
  std::vector<int> pools_;
  std::vector<int> rc_;
  int capacity_;
};

/// Volumetric usage of one link plus the ATCS loan ledger.
///
/// used[c] counts every slot held by class c. Under ATCS each of those slots
/// is drawn either from c's own pool (own_used[c]) or from a donor pool d
/// (borrowed[c][d]); MAM and RDM leave the ledger at zero.
struct BamState {
  std::vector<int> used;
  std::vector<int> own_used;
  std::vector<std::vector<int>> borrowed;

  BamState() = default;
  explicit BamState(int class_count);

  int total_used() const;
  /// Nominal capacity of pool d not yet drawn by anybody (ATCS ledger).
  int spare(const BamConfig& config, ClassIndex d) const;

  bool operator==(const BamState&) const = default;
};

/// Slots one lightpath drew from each pool, indexed by pool (class) index.
struct Attribution {
  std::vector<int> from_pool;
  int total() const;
  bool operator==(const Attribution&) const = default;
};

/// Whether `kind` lets class c take b more slots on this link. Side-effect free.
///   MAM:  used_c + b <= pool_c
///   RDM:  for every k <= c: sum_{j >= k} used_j + b <= RC_k
///   ATCS: sum_j used_j + b <= capacity
/// Throws UnknownClass for c outside [0, C), std::invalid_argument for b < 1.
bool admit(BamKind kind, const BamConfig& config, const BamState& state, ClassIndex c, int b);

/// Charges b slots to class c. Under ATCS the own pool is drawn first, then
/// donor pools with spare capacity in ascending priority order.
/// Throws PreconditionViolated when admit() would refuse.
Attribution commit(BamKind kind, const BamConfig& config, BamState& state, ClassIndex c, int b);

/// Undoes the commit that produced `attribution`. Throws LedgerUnderflow if any
/// counter would go negative (state is left unchanged).
void release_volumetric(BamKind kind, const BamConfig& config, BamState& state, ClassIndex c,
                        const Attribution& attribution);

/// Returns a description of the first violated model invariant, if any.
std::optional<std::string> check_invariants(BamKind kind, const BamConfig& config,
                                            const BamState& state);

}  // namespace eonbam
