#ifndef BISET_CACHE_HPP_
#define BISET_CACHE_HPP_

// On-disk caches.  Both formats are plain text, one record per line, with
// every integer list written as "<length> <e1> <e2> ...".  Files are named by
// the Cayley table hashes and carry a format version; a file whose header
// does not match is ignored.  Writes go to a temporary file that is renamed
// into place.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biset/group.hpp"
#include "biset/lattice.hpp"

namespace biset {

  inline constexpr int kLatticeCacheVersion = 1;
  inline constexpr int kBasisCacheVersion   = 1;

  std::string hash_hex(std::uint64_t h);

  std::string lattice_cache_path(std::string const& dir, FiniteGroup const& g);
  void        save_lattice_file(std::string const& dir, SubgroupLattice const& lat);
  //! Returns nothing when the file is missing, stale, or malformed.
  std::optional<SubgroupLattice> load_lattice_file(std::string const& dir, GroupPtr const& g);

  //! |L|, |p1|, |p2|, |k1|, |k2|, |q| for one label.
  using LabelSizes = std::array<std::size_t, 6>;

  struct BasisRecord {
    std::vector<Subgroup>   labels;
    std::vector<LabelSizes> sizes;
  };

  std::string basis_cache_path(std::string const& dir, FiniteGroup const& left,
                               FiniteGroup const& right);
  void        save_basis_file(std::string const& dir, FiniteGroup const& left,
                              FiniteGroup const& right, BasisRecord const& record);
  std::optional<BasisRecord> load_basis_file(std::string const& dir, FiniteGroup const& left,
                                             FiniteGroup const& right);

  //! Writes `contents` to `path` through a temporary file and a rename.
  void write_file_atomically(std::string const& path, std::string const& contents);

}  // namespace biset

#endif  // BISET_CACHE_HPP_
