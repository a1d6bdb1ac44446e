#ifndef BISET_CATALOG_HPP_
#define BISET_CATALOG_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "biset/group.hpp"

namespace biset {

  //! Raised for group-spec text that does not follow the grammar.
  class ParseError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  //! Abstract description of a catalog group.
  //!
  //!   Cyclic(n)            C<n>, or 1 for the trivial group
  //!   AbelianProduct(n^k)  C<n>^<k>
  //!   Dihedral(2n)         D<2n>, order 2n
  //!   Symmetric(n)         S<n>, n <= 4
  //!   Alternating(n)       A<n>, n <= 5
  //!   Extraspecial(p)      X(<p^3>), order p^3 and exponent p, p odd
  //!   Modular(p, n)        M(<p>,<n>) = <a, b | a^(p^n) = b^(p^n) = 1,
  //!                        b a b^-1 = a^(1 + p^(n-1))>, n >= 2
  //!   Product(a, b)        <a>x<b>
  struct GroupSpec {
    enum class Kind {
      Cyclic,
      AbelianProduct,
      Dihedral,
      Symmetric,
      Alternating,
      Extraspecial,
      Modular,
      Product
    };

    Kind                     kind = Kind::Cyclic;
    std::vector<std::size_t> params;
    std::vector<GroupSpec>   factors;  // exactly two for Product

    static GroupSpec cyclic(std::size_t n);
    static GroupSpec abelian_power(std::size_t n, std::size_t k);
    static GroupSpec dihedral(std::size_t order);
    static GroupSpec symmetric(std::size_t n);
    static GroupSpec alternating(std::size_t n);
    static GroupSpec extraspecial(std::size_t p);
    static GroupSpec modular(std::size_t p, std::size_t n);
    static GroupSpec product(GroupSpec a, GroupSpec b);

    bool operator==(GroupSpec const&) const = default;
  };

  //! Throws ParseError on malformed text or on a spec that violates its
  //! invariants (e.g. M(2,1)).
  GroupSpec   parse_group_spec(std::string const& text);
  std::string to_string(GroupSpec const& spec);

  //! Throws PreconditionError for ill-formed specs.
  GroupPtr build_group(GroupSpec const& spec);
  GroupPtr build_group(std::string const& text);

  //! Same table under a new display name.
  GroupPtr renamed(GroupPtr const& g, std::string name);

  //! Isomorphism-type name such as "C2^3", "C2xC4", "S3" or "A4xC2", found
  //! by structure (abelian invariants) or by comparison with small catalog
  //! groups; falls back to "G<order>".
  std::string describe_group(FiniteGroup const& g);

  //! Invariant factors d1 | d2 | ... of an abelian group.
  std::vector<std::size_t> abelian_invariants(FiniteGroup const& g);

  //! The abelian group with the given invariant factors (or any list of
  //! cyclic orders), as a direct product of cyclic groups.
  GroupPtr abelian_group(std::vector<std::size_t> const& orders);

  //! Catalog groups of order <= max_order, one per spec below the bound,
  //! used by test suites.  Abelian groups are given by invariant factors.
  std::vector<GroupSpec> catalog_specs(std::size_t max_order);

}  // namespace biset

#endif  // BISET_CATALOG_HPP_
