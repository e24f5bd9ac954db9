#pragma once

#include <string>

#include "snse/field.hpp"

namespace snse {

/// Field snapshot file: magic "SNSE", version u32, d u32, D u32, box bound per
/// axis u32, time f64, then per component little-endian f64 (re, im) pairs for
/// k in lexicographic order over the box prod [-n_a, n_a].
void save_snapshot(const std::string& path, const SpectralField& F,
                   const MultiIndex& box, double time);

struct Snapshot {
  SpectralField field;  // reconstructed on `grid` passed to load
  MultiIndex box{};
  double time = 0.0;
};

Snapshot load_snapshot(const std::string& path, const Grid& grid);

}  // namespace snse
