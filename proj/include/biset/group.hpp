#ifndef BISET_GROUP_HPP_
#define BISET_GROUP_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace biset {

  using Element = std::uint32_t;

  //! Raised when an input violates an operation's precondition.
  class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  //! Raised when an enumeration or search exceeds its configured budget.
  class BudgetExceeded : public std::runtime_error {
   public:
    BudgetExceeded(std::string const& what, std::size_t progress)
        : std::runtime_error(what), progress_(progress) {}
    //! Amount of work completed (e.g. subgroups found) before giving up.
    std::size_t progress() const noexcept {
      return progress_;
    }

   private:
    std::size_t progress_;
  };

  //! Size limits for the exhaustive algorithms.  These are configuration, so
  //! larger runs only need to raise them.
  struct Limits {
    std::size_t max_product_order     = 4096;
    std::size_t max_automorphism_order = 64;
    std::size_t max_subgroups          = 2'000'000;
    std::size_t max_automorphisms      = 2'000'000;
  };

  Limits&       limits();

  //! A finite group on the elements {0, ..., n-1} given by its full Cayley
  //! table.  Element 0 is the identity.
  class FiniteGroup {
   public:
    //! Builds a group from a row-major table, table[a * n + b] = a * b.
    //! Identity and inverses are always checked; associativity is checked
    //! exhaustively when n <= 64.
    FiniteGroup(std::string name, std::size_t order, std::vector<Element> table);

    std::size_t order() const noexcept {
      return order_;
    }
    Element mul(Element a, Element b) const noexcept {
      return table_[static_cast<std::size_t>(a) * order_ + b];
    }
    Element inv(Element a) const noexcept {
      return inv_[a];
    }
    Element conj(Element g, Element x) const noexcept {  // g x g^-1
      return mul(mul(g, x), inv_[g]);
    }
    Element power(Element a, std::size_t k) const noexcept;

    std::string const& name() const noexcept {
      return name_;
    }
    std::size_t element_order(Element a) const noexcept {
      return elt_order_[a];
    }
    std::size_t centralizer_size(Element a) const noexcept {
      return centralizer_size_[a];
    }
    bool is_abelian() const noexcept {
      return abelian_;
    }
    std::size_t exponent() const noexcept;
    //! Sorted list of elements commuting with everything.
    std::vector<Element> center() const;
    //! A small generating set found greedily (largest element order first).
    std::vector<Element> const& generators() const noexcept {
      return gens_;
    }
    //! FNV-1a hash of the Cayley table; identifies the group's encoding.
    std::uint64_t content_hash() const noexcept {
      return hash_;
    }
    std::vector<Element> const& table() const noexcept {
      return table_;
    }
    //! Histogram: count[k] = number of elements of order k.
    std::vector<std::size_t> order_histogram() const;

    //! Exhaustive associativity check.
    bool is_associative() const;

   private:
    std::string          name_;
    std::size_t          order_;
    std::vector<Element> table_;
    std::vector<Element> inv_;
    std::vector<std::size_t> elt_order_;
    std::vector<std::size_t> centralizer_size_;
    std::vector<Element> gens_;
    bool                 abelian_;
    std::uint64_t        hash_;
  };

  using GroupPtr = std::shared_ptr<FiniteGroup const>;

  //! Same encoding (identical Cayley tables), not merely isomorphic.
  bool same_group(FiniteGroup const& a, FiniteGroup const& b) noexcept;

  //! (g, h) is encoded as g * |H| + h.
  GroupPtr direct_product(GroupPtr const& g, GroupPtr const& h);

  GroupPtr cyclic_group(std::size_t n);

  //! Subset of the elements of a group, kept as a sorted list plus a bit mask.
  //! Equality and ordering only look at the elements; the parent group is
  //! implied by context.
  class ElementSet {
   public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

    bool test(Element x) const noexcept {
      return (words_[x >> 6] >> (x & 63)) & 1U;
    }
    void set(Element x) noexcept {
      words_[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
    std::vector<std::uint64_t> const& words() const noexcept {
      return words_;
    }
    bool operator==(ElementSet const&) const = default;
    bool subset_of(ElementSet const& other) const noexcept;
    std::size_t hash() const noexcept;

   private:
    std::vector<std::uint64_t> words_;
  };

  struct ElementSetHash {
    std::size_t operator()(ElementSet const& s) const noexcept {
      return s.hash();
    }
  };

  class Subgroup {
   public:
    Subgroup() = default;
    //! `elements` need not be sorted; no closure check is done here.
    Subgroup(std::size_t universe, std::vector<Element> elements);

    std::vector<Element> const& elements() const noexcept {
      return elements_;
    }
    std::size_t size() const noexcept {
      return elements_.size();
    }
    bool contains(Element x) const noexcept {
      return mask_.test(x);
    }
    ElementSet const& mask() const noexcept {
      return mask_;
    }
    bool subset_of(Subgroup const& other) const noexcept {
      return mask_.subset_of(other.mask_);
    }

    bool operator==(Subgroup const& other) const noexcept {
      return mask_ == other.mask_;
    }
    //! Lexicographic comparison of the sorted element lists.
    bool operator<(Subgroup const& other) const noexcept {
      return elements_ < other.elements_;
    }

   private:
    std::vector<Element> elements_;
    ElementSet           mask_;
  };

  struct SubgroupHash {
    std::size_t operator()(Subgroup const& s) const noexcept {
      return s.mask().hash();
    }
  };

  //! Orders by size first, then lexicographically.  This is the order used
  //! for every deterministic listing.
  struct SizeThenLex {
    bool operator()(Subgroup const& a, Subgroup const& b) const noexcept {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
  };

  // Subgroup constructions

  Subgroup trivial_subgroup(FiniteGroup const& g);
  Subgroup whole_group(FiniteGroup const& g);
  Subgroup generated_subgroup(FiniteGroup const& g, std::vector<Element> const& gens);
  //! <S, x>, assuming S is a subgroup.
  Subgroup join(FiniteGroup const& g, Subgroup const& s, Element x);
  bool     is_subgroup(FiniteGroup const& g, std::vector<Element> const& elements);
  Subgroup conjugate(FiniteGroup const& g, Subgroup const& s, Element by);
  bool     is_normal(FiniteGroup const& g, Subgroup const& n, Subgroup const& in);
  bool     is_normal(FiniteGroup const& g, Subgroup const& n);
  Subgroup normalizer(FiniteGroup const& g, Subgroup const& s);
  Subgroup intersection(FiniteGroup const& g, Subgroup const& a, Subgroup const& b);
  //! Lexicographically least conjugate.
  Subgroup canonical_conjugate(FiniteGroup const& g, Subgroup const& s);

  //! A subgroup re-indexed as a group in its own right: element i of the new
  //! group is s.elements()[i].
  struct Embedded {
    GroupPtr             group;
    std::vector<Element> embedding;  // new index -> parent element
  };
  Embedded subgroup_as_group(FiniteGroup const& g, Subgroup const& s, std::string name = "");

  struct Quotient {
    GroupPtr             group;
    std::vector<Element> projection;  // parent element -> coset index
  };
  //! G/N with cosets numbered by their least element; throws if N is not normal.
  Quotient quotient_group(FiniteGroup const& g, Subgroup const& n, std::string name = "");

  //! One representative per double coset A g B, in increasing order.
  std::vector<Element> double_coset_reps(FiniteGroup const& g, Subgroup const& a, Subgroup const& b);

  // Isomorphism

  //! An explicit isomorphism g -> h as an image table, or nothing.
  std::optional<std::vector<Element>> is_isomorphic(FiniteGroup const& g, FiniteGroup const& h);

  struct AutomorphismData {
    std::vector<std::vector<Element>> automorphisms;
    std::size_t                       inner_count;
    std::size_t                       out_order;
  };
  AutomorphismData automorphisms(FiniteGroup const& g);

  //! Checks that `map` is a bijective homomorphism g -> h.
  bool is_isomorphism(FiniteGroup const& g, FiniteGroup const& h, std::vector<Element> const& map);

  // Structural predicates

  bool is_cyclic(FiniteGroup const& g);
  bool is_p_group(FiniteGroup const& g, std::size_t* prime = nullptr);
  //! All Sylow subgroups normal.
  bool is_nilpotent(FiniteGroup const& g);
  //! The elements of p-power order; a subgroup exactly when the Sylow
  //! p-subgroup is normal.
  std::vector<Element> p_elements(FiniteGroup const& g, std::size_t p);
  std::vector<std::size_t> prime_divisors(std::size_t n);
  std::size_t euler_phi(std::size_t n);
  bool is_prime(std::uint64_t n);

}  // namespace biset

#endif  // BISET_GROUP_HPP_
