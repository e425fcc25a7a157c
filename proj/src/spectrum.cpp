#include "eonbam/spectrum.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "eonbam/error.hpp"

namespace eonbam {

namespace {

constexpr int kWordBits = 64;

std::string describe(SlotRange r) {
  return "[" + std::to_string(r.start) + ", " + std::to_string(r.end()) + ")";
}

bool bit(const std::vector<std::uint64_t>& words, int i) {
  return (words[i / kWordBits] >> (i % kWordBits)) & 1U;
}

// First index >= from whose bit equals `value`, or `limit` if none.
int scan(const std::vector<std::uint64_t>& words, int from, int limit, bool value) {
  int i = from;
  while (i < limit) {
    const int w = i / kWordBits;
    const int off = i % kWordBits;
    std::uint64_t word = value ? words[w] : ~words[w];
    word >>= off;
    if (word != 0) {
      const int hit = i + std::countr_zero(word);
      return hit < limit ? hit : limit;
    }
    i = (w + 1) * kWordBits;
  }
  return limit;
}

}  // namespace

SpectrumGrid::SpectrumGrid(int capacity)
    : capacity_(capacity), words_((capacity + kWordBits - 1) / kWordBits, 0) {
  if (capacity <= 0) throw std::invalid_argument("grid capacity must be positive");
}

bool SpectrumGrid::occupied(int slot) const { return bit(words_, slot); }

int SpectrumGrid::occupied_count() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool SpectrumGrid::is_free(SlotRange range) const {
  if (range.length < 1 || range.start < 0 || range.end() > capacity_) return false;
  return scan(words_, range.start, range.end(), true) == range.end();
}

void SpectrumGrid::set(int slot, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (slot % kWordBits);
  if (value) {
    words_[slot / kWordBits] |= mask;
  } else {
    words_[slot / kWordBits] &= ~mask;
  }
}

std::optional<SlotRange> first_fit(std::span<const SpectrumGrid* const> grids, int n) {
  if (n < 1) throw std::invalid_argument("first_fit needs n >= 1");
  if (grids.empty()) throw std::invalid_argument("first_fit needs at least one grid");
  const int capacity = grids.front()->capacity();
  for (const SpectrumGrid* g : grids) {
    if (g->capacity() != capacity) {
      throw CapacityMismatch("grids of capacity " + std::to_string(capacity) + " and " +
                             std::to_string(g->capacity()));
    }
  }

  // Union of occupancy: a slot is usable only if free on every link.
  std::vector<std::uint64_t> busy = grids.front()->words();
  for (const SpectrumGrid* g : grids.subspan(1)) {
    for (std::size_t w = 0; w < busy.size(); ++w) busy[w] |= g->words()[w];
  }

  int pos = 0;
  while (pos + n <= capacity) {
    const int start = scan(busy, pos, capacity, false);
    if (start + n > capacity) break;
    const int stop = scan(busy, start, start + n, true);
    if (stop == start + n) return SlotRange{start, n};
    pos = stop;
  }
  return std::nullopt;
}

void occupy(std::span<SpectrumGrid* const> grids, SlotRange range) {
  for (const SpectrumGrid* g : grids) {
    if (!g->is_free(range)) {
      throw SlotConflict("slots " + describe(range) + " are not all free");
    }
  }
  for (SpectrumGrid* g : grids) {
    for (int s = range.start; s < range.end(); ++s) g->set(s, true);
  }
}

void release(std::span<SpectrumGrid* const> grids, SlotRange range) {
  for (const SpectrumGrid* g : grids) {
    if (range.length < 1 || range.start < 0 || range.end() > g->capacity() ||
        scan(g->words(), range.start, range.end(), false) != range.end()) {
      throw SlotNotOccupied("slots " + describe(range) + " are not all occupied");
    }
  }
  for (SpectrumGrid* g : grids) {
    for (int s = range.start; s < range.end(); ++s) g->set(s, false);
  }
}

}  // namespace eonbam
