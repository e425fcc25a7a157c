#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace eonbam {

/// Contiguous block of frequency slots [start, start + length).
struct SlotRange {
  int start = 0;
  int length = 0;
  int end() const { return start + length; }
  bool operator==(const SlotRange&) const = default;
};

/// Occupancy bitmap of one link's slots. Slot 0 is the lowest frequency.
class SpectrumGrid {
 public:
  SpectrumGrid() = default;
  explicit SpectrumGrid(int capacity);

  int capacity() const { return capacity_; }
  bool occupied(int slot) const;
  int occupied_count() const;

  /// True when every slot of `range` lies inside the grid and is free.
  bool is_free(SlotRange range) const;

  // Single-grid mutators used by occupy()/release() and by tests that build
  // arbitrary masks. No consistency checks.
  void set(int slot, bool value);

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const SpectrumGrid&) const = default;

 private:
  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Lowest-start range of `n` slots that is free on every grid at once
/// (contiguity within a link, continuity across links).
/// Throws CapacityMismatch if grid sizes differ, std::invalid_argument if n < 1.
std::optional<SlotRange> first_fit(std::span<const SpectrumGrid* const> grids, int n);

/// Marks `range` occupied on every grid. Throws SlotConflict (leaving all grids
/// untouched) if any slot is taken or out of range.
void occupy(std::span<SpectrumGrid* const> grids, SlotRange range);

/// Frees `range` on every grid. Throws SlotNotOccupied (leaving all grids
/// untouched) if any slot is already free.
void release(std::span<SpectrumGrid* const> grids, SlotRange range);

}  // namespace eonbam
