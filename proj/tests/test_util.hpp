#pragma once

#include "johnforge/geometry.hpp"

namespace testutil {

using namespace johnforge;

// Union of disks, for suite shapes the spec catalog does not generate.
inline CompactSetMask make_disks(const std::vector<std::pair<Vec2, double>>& disks,
                                 int level, Box box = Box{}) {
  CompactSetMask m;
  m.box = box;
  m.level = level;
  m.shape_spec = "disks";
  int N = m.n();
  m.bits.assign(size_t(N) * N, 0);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      Vec2 z = m.pixel_center(i, j);
      for (auto& [c, r] : disks)
        if (std::abs(z - c) <= r) {
          m.set(i, j);
          break;
        }
    }
  m.check_invariants();
  return m;
}

// Square outlines (rings) of pixels, for synthetic connectivity cases.
inline CompactSetMask make_rings(const std::vector<std::pair<Vec2, double>>& rings,
                                 int level, Box box = Box{}) {
  CompactSetMask m;
  m.box = box;
  m.level = level;
  m.shape_spec = "rings";
  int N = m.n();
  m.bits.assign(size_t(N) * N, 0);
  double h = m.pixel();
  for (auto& [c, half] : rings) {
    Vec2 lo = c - Vec2(half, half), hi = c + Vec2(half, half);
    int i0 = int((lo.real() - m.box.lo().real()) / h);
    int i1 = int((hi.real() - m.box.lo().real()) / h);
    int j0 = int((lo.imag() - m.box.lo().imag()) / h);
    int j1 = int((hi.imag() - m.box.lo().imag()) / h);
    for (int i = i0; i <= i1; ++i) {
      m.set(i, j0);
      m.set(i, j1);
    }
    for (int j = j0; j <= j1; ++j) {
      m.set(i0, j);
      m.set(i1, j);
    }
  }
  m.check_invariants();
  return m;
}

}  // namespace testutil
