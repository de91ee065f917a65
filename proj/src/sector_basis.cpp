#include "qst/sector_basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qst {

std::size_t SectorBasis::index_of(std::uint32_t config) const {
  auto it = std::lower_bound(configs.begin(), configs.end(), config);
  if (it == configs.end() || *it != config)
    throw std::invalid_argument("SectorBasis::index_of: configuration " +
                                std::to_string(config) + " not in sector");
  return static_cast<std::size_t>(it - configs.begin());
}

SectorBasis enumerate_sector_basis(int n_sites, int n_up) {
  if (n_sites < 1 || n_sites > 20)
    throw std::invalid_argument("enumerate_sector_basis: n_sites must be in [1, 20]");
  if (n_up < 0 || n_up > n_sites)
    throw std::invalid_argument("enumerate_sector_basis: n_up must be in [0, n_sites]");

  SectorBasis basis;
  basis.n_sites = n_sites;
  basis.n_up = n_up;

  if (n_up == 0) {
    basis.configs.push_back(0);
    return basis;
  }
  // Gosper's hack walks the n_up-bit patterns in ascending order.
  std::uint32_t c = (1u << n_up) - 1;
  const std::uint32_t limit = 1u << n_sites;
  while (c < limit) {
    basis.configs.push_back(c);
    std::uint32_t lowest = c & (~c + 1);
    std::uint32_t ripple = c + lowest;
    std::uint32_t ones = c ^ ripple;
    ones = (ones >> 2) / lowest;
    c = ripple | ones;
    if (ripple == 0) break;
  }
  return basis;
}

}  // namespace qst
