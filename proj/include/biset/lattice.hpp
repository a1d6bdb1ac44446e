#ifndef BISET_LATTICE_HPP_
#define BISET_LATTICE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "biset/budget.hpp"
#include "biset/group.hpp"

namespace biset {

  struct SubgroupClass {
    std::vector<std::size_t> members;  // indices into SubgroupLattice::subgroups
    std::size_t              representative() const {
      return members.front();
    }
    std::size_t size() const {
      return members.size();
    }
  };

  //! Every subgroup of a group together with its conjugacy classes.
  //!
  //! Subgroups are listed by size and then lexicographically; classes are
  //! listed in the order of their representatives, and every class lists its
  //! lexicographically least member first.
  struct SubgroupLattice {
    GroupPtr                   group;
    std::vector<Subgroup>      subgroups;
    std::vector<std::size_t>   class_of;
    std::vector<SubgroupClass> classes;
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;

    std::optional<std::size_t> find(Subgroup const& s) const;
    Subgroup const&            representative(std::size_t cls) const {
      return subgroups[classes[cls].representative()];
    }
    //! Rebuilds `class_of` and `index` from `subgroups` and `classes`.
    void reindex();
  };

  using LatticePtr = std::shared_ptr<SubgroupLattice const>;

  //! Cyclic-extension enumeration with conjugacy classes.  Results are kept
  //! in a process-wide cache keyed by the Cayley table hash, backed by the
  //! on-disk cache when a cache directory is configured.
  LatticePtr subgroup_lattice(GroupPtr const& g, Budget const& budget = Budget());

  //! Enumeration only, no caching.
  SubgroupLattice compute_subgroup_lattice(GroupPtr const& g, Budget const& budget = Budget());

  std::vector<Subgroup>      all_subgroups(GroupPtr const& g, Budget const& budget = Budget());
  std::vector<SubgroupClass> subgroup_conjugacy_classes(GroupPtr const& g,
                                                        Budget const&   budget = Budget());

  //! Normal subgroups N of G, in lattice order.
  std::vector<Subgroup> normal_subgroups(GroupPtr const& g);

  struct Section {
    Subgroup top;
    Subgroup bottom;  // normal in top
  };

  struct SectionClass {
    Section     representative;
    std::size_t size;  // number of sections in the class
  };

  //! All sections (T, S) up to simultaneous conjugation.  The representative
  //! has T the class representative of its subgroup class and S the least
  //! member of its orbit under the normalizer of T.
  std::vector<SectionClass> section_classes(GroupPtr const& g);

  GroupPtr section_quotient(FiniteGroup const& g, Section const& s);

  struct Subquotient {
    GroupPtr group;
    Section  witness;
  };

  //! One group per isomorphism type of subquotient, ordered by group order.
  std::vector<Subquotient> subquotients_up_to_iso(GroupPtr const& g);

  //! Some N with G/N isomorphic to h, with the isomorphism h -> G/N.
  struct QuotientWitness {
    Subgroup             kernel;
    Quotient             quotient;
    std::vector<Element> iso;  // h -> quotient.group
  };
  std::optional<QuotientWitness> find_quotient_isomorphic_to(GroupPtr const& g,
                                                             FiniteGroup const& h);

  bool is_subquotient(GroupPtr const& h, GroupPtr const& g);

  //! Directory for the subgroup-lattice and basis cache files; empty disables
  //! disk caching.
  void               set_cache_directory(std::string dir);
  std::string const& cache_directory();

}  // namespace biset

#endif  // BISET_LATTICE_HPP_
