#ifndef BISET_BISET_HPP_
#define BISET_BISET_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "biset/budget.hpp"
#include "biset/cache.hpp"
#include "biset/field.hpp"
#include "biset/group.hpp"
#include "biset/lattice.hpp"

namespace biset {

  //! p1, p2, k1, k2 of L <= G x H and q(L) = L / (k1 x k2).
  struct ProductInvariants {
    Subgroup p1, k1;  // in G
    Subgroup p2, k2;  // in H
    GroupPtr q;
  };

  //! Per-label data used by composition.
  struct LabelData {
    std::vector<std::pair<Element, Element>> pairs;  // (g, h) for each element of L
    std::size_t                              p1 = 0;  // subgroup index in the left lattice
    std::size_t                              p2 = 0;  // subgroup index in the right lattice
    std::size_t                              k1 = 0;
    std::size_t                              k2 = 0;
    // h-values paired with each g: right_of[offset[g] .. offset[g+1])
    std::vector<std::uint32_t> offset;
    std::vector<Element>       right_of;
  };

  //! The canonical basis of B(G, H): one label per (G x H)-conjugacy class
  //! of subgroups of G x H, in lattice order (by size, then
  //! lexicographically by the lex-least representative).
  class BisetSpace {
   public:
    BisetSpace(GroupPtr left, GroupPtr right, Budget const& budget = Budget());

    GroupPtr const& left() const noexcept {
      return left_;
    }
    GroupPtr const& right() const noexcept {
      return right_;
    }
    GroupPtr const& product() const noexcept {
      return product_;
    }
    LatticePtr const& lattice() const noexcept {
      return lattice_;
    }
    LatticePtr const& left_lattice() const noexcept {
      return left_lattice_;
    }
    LatticePtr const& right_lattice() const noexcept {
      return right_lattice_;
    }

    std::size_t size() const noexcept {
      return labels_.size();
    }
    //! Canonical representative of label i.
    Subgroup const& label(std::size_t i) const {
      return lattice_->subgroups[labels_[i]];
    }
    LabelSizes const& sizes(std::size_t i) const {
      return sizes_[i];
    }
    LabelData const& data(std::size_t i) const {
      return data_[i];
    }
    //! Label of the class of an arbitrary subgroup of G x H; throws
    //! PreconditionError when the set is not a subgroup.
    std::size_t index_of(Subgroup const& l) const;
    std::size_t index_of_mask(ElementSet const& mask) const;
    //! Label of the diagonal {(g, g)} for square spaces.
    std::size_t identity_index() const;

    Element pair(Element g, Element h) const noexcept {
      return g * static_cast<Element>(right_->order()) + h;
    }

   private:
    GroupPtr                 left_, right_, product_;
    LatticePtr               lattice_, left_lattice_, right_lattice_;
    std::vector<std::size_t> labels_;  // subgroup index of each class representative
    std::vector<LabelSizes>  sizes_;
    std::vector<LabelData>   data_;
  };

  using SpacePtr = std::shared_ptr<BisetSpace const>;

  //! Memoized by Cayley-table hashes.  When a cache directory is set the
  //! basis is also written to disk.
  SpacePtr biset_space(GroupPtr const& left, GroupPtr const& right,
                       Budget const& budget = Budget());

  //! Same as biset_space; the field does not affect the labels.
  SpacePtr canonical_basis(GroupPtr const& left, GroupPtr const& right, FieldSpec const& field,
                           Budget const& budget = Budget());

  ProductInvariants product_invariants(FiniteGroup const& g, FiniteGroup const& h,
                                       Subgroup const& l);

  //! L * M = {(g, k) : (g, h) in L and (h, k) in M for some h}.
  Subgroup star(FiniteGroup const& g, FiniteGroup const& h, FiniteGroup const& k,
                Subgroup const& l, Subgroup const& m);

  //! Label multiplicities, sorted by label.
  using LabelCounts = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

  //! Mackey-formula composition of basis labels over (G,H) and (H,K).  Keeps
  //! double-coset caches, so one instance per worker thread.
  class Composer {
   public:
    Composer(SpacePtr gh, SpacePtr hk, SpacePtr gk);
    Composer(SpacePtr gh, SpacePtr hk);

    SpacePtr const& target() const noexcept {
      return gk_;
    }
    LabelCounts compose(std::size_t i, std::size_t j);
    //! Number of double cosets p2(L_i) \ H / p1(M_j).
    std::size_t term_count(std::size_t i, std::size_t j);

   private:
    std::vector<Element> const& reps(std::size_t a, std::size_t b);

    SpacePtr                                               gh_, hk_, gk_;
    std::unordered_map<std::uint64_t, std::vector<Element>> dc_cache_;
  };

  //! A finite linear combination of basis labels of B(G, H) over a field.
  class BisetElement {
   public:
    BisetElement(SpacePtr space, FieldSpec field) : space_(std::move(space)), field_(field) {}
    //! 1 * label.
    static BisetElement basis(SpacePtr space, FieldSpec field, std::size_t label);
    static BisetElement basis(SpacePtr space, FieldSpec field, std::size_t label,
                              Scalar const& coeff);

    SpacePtr const& space() const noexcept {
      return space_;
    }
    FieldSpec const& field() const noexcept {
      return field_;
    }
    std::map<std::uint32_t, Scalar> const& terms() const noexcept {
      return terms_;
    }
    Scalar coefficient(std::size_t label) const;
    bool   is_zero() const noexcept {
      return terms_.empty();
    }

    void add(std::size_t label, Scalar const& c);
    BisetElement  operator+(BisetElement const& o) const;
    BisetElement  operator*(Scalar const& c) const;
    bool          operator==(BisetElement const& o) const;

   private:
    SpacePtr                        space_;
    FieldSpec                       field_;
    std::map<std::uint32_t, Scalar> terms_;
  };

  //! Bilinear extension of the Mackey formula.
  BisetElement compose(BisetElement const& x, BisetElement const& y);
  //! Composition of two labels with integer multiplicities.
  LabelCounts mackey_compose(SpacePtr const& gh, std::size_t i, SpacePtr const& hk, std::size_t j);

  //! Identity element Delta(G) of B(G, G).
  BisetElement identity_element(GroupPtr const& g, FieldSpec field);

  // Elementary bisets

  struct ElementaryBiset {
    enum class Kind { Ind, Res, Inf, Def, Iso };
    Kind        kind;
    SpacePtr    space;
    std::size_t label;

    BisetElement element(FieldSpec field) const {
      return BisetElement::basis(space, field, label);
    }
    std::string describe() const;
  };

  //! Ind_H^G for H given with an embedding into G, and similarly below.
  ElementaryBiset induction(GroupPtr const& g, Embedded const& h);
  ElementaryBiset restriction(GroupPtr const& g, Embedded const& h);
  ElementaryBiset inflation(GroupPtr const& g, Quotient const& q);
  ElementaryBiset deflation(GroupPtr const& g, Quotient const& q);
  //! Iso(alpha) for an isomorphism alpha: h -> target given as an image table.
  ElementaryBiset isogation(GroupPtr const& target, GroupPtr const& h,
                            std::vector<Element> const& alpha);

  //! Ind_{p1}^G, Inf, Iso(alpha), Def, Res^H_{p2}, in composition order
  //! (leftmost first).
  std::array<ElementaryBiset, 5> butterfly_factorize(SpacePtr const& space, std::size_t label);
  BisetElement compose_factors(std::array<ElementaryBiset, 5> const& factors, FieldSpec field);

  //! Composition by explicit construction of U x_H V and its orbits.  Test
  //! oracle; quadratic in the biset sizes.
  LabelCounts realize_and_compose_oracle(SpacePtr const& gh, std::size_t i, SpacePtr const& hk,
                                         std::size_t j, SpacePtr const& gk);

  //! Number of Delta(G)-orbits on (G x G)/L.
  std::uint64_t label_trace(BisetSpace const& space, std::size_t label);
  Scalar        trace_map(BisetElement const& x);

  bool is_left_free(BisetSpace const& space, std::size_t label);

}  // namespace biset

#endif  // BISET_BISET_HPP_
