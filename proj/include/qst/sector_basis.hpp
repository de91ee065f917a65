#pragma once

#include <cstdint>
#include <vector>

namespace qst {

// All spin configurations of an n_sites chain with exactly n_up spins up.
// Bit j of a config is site j+1; configs are sorted ascending by integer
// value, which fixes the matrix layout of every sector Hamiltonian.
struct SectorBasis {
  int n_sites = 0;
  int n_up = 0;
  std::vector<std::uint32_t> configs;

  std::size_t dimension() const { return configs.size(); }

  // Position of config in the sorted list; throws if it is not a member.
  std::size_t index_of(std::uint32_t config) const;

  bool operator==(const SectorBasis& other) const = default;
};

SectorBasis enumerate_sector_basis(int n_sites, int n_up);

}  // namespace qst
