#ifndef BISET_FUNCTOR_HPP_
#define BISET_FUNCTOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biset/biset.hpp"
#include "biset/budget.hpp"
#include "biset/field.hpp"
#include "biset/linalg.hpp"

namespace biset {

  enum class Verdict { True, False, Inconclusive };
  std::string to_string(Verdict v);

  struct SearchOptions {
    Budget      budget;
    unsigned    threads     = 1;
    bool        certificate = true;
    std::size_t batch       = 4096;
  };

  //! Mackey formula on explicit subgroups: U <= H x G and W <= G x K give one
  //! subgroup of H x K per double coset p2(U) \ G / p1(W).
  std::vector<Subgroup> subgroup_mackey(FiniteGroup const& h, FiniteGroup const& g,
                                        FiniteGroup const& k, Subgroup const& u,
                                        Subgroup const& w);

  //! id_H = sum of coeff * (U o W), U <= H x G and W <= G x H given by
  //! canonical (lexicographically least) conjugates.
  struct GeneratesCertificate {
    struct Term {
      Subgroup u;
      Subgroup w;
      Scalar   coeff;
    };
    GroupPtr          h, g;
    FieldSpec         field;
    std::vector<Term> terms;  // sorted by (u, w)
  };

  //! Element of B(H,H) keyed by canonical subgroup of H x H.
  using CanonicalSum = std::map<std::vector<Element>, Scalar>;

  //! sum of coeff * (U o W), computed without the subgroup lattice of H x G.
  CanonicalSum recompose(GeneratesCertificate const& cert);
  bool         verify_certificate(GeneratesCertificate const& cert);

  //! Certificate for K |- G from certificates for K |- H and H |- G.
  GeneratesCertificate chain_certificates(GeneratesCertificate const& kh,
                                          GeneratesCertificate const& hg);

  struct GeneratesReport {
    GroupPtr  h, g;
    FieldSpec field;
    Verdict   result = Verdict::Inconclusive;
    //! "not-subquotient", "quotient", "span", "transitive"
    std::string                         method;
    std::optional<GeneratesCertificate> certificate;
    std::uint64_t                       products_tried = 0;
    std::uint64_t                       products_total = 0;
    std::uint64_t                       rank_reached   = 0;
    std::uint64_t                       dimension      = 0;  // |basis(H,H)|
    std::string                         note;
  };

  //! Decides id_H in span{U o W : U in basis(H,G), W in basis(G,H)}.
  GeneratesReport generates(GroupPtr const& h, GroupPtr const& g, FieldSpec field,
                            SearchOptions const& options = {});

  //! The full span search, skipping the quotient shortcut.
  GeneratesReport generates_by_span(GroupPtr const& h, GroupPtr const& g, FieldSpec field,
                                    SearchOptions const& options = {});

  struct NvEntry {
    GroupPtr        h;
    Section         witness;
    GeneratesReport report;
    std::string     via;  // name of the intermediate group for transitive verdicts
  };

  struct NvReport {
    GroupPtr             g;
    FieldSpec            field;
    std::vector<NvEntry> entries;  // by decreasing order of H
    Verdict              overall = Verdict::Inconclusive;
  };

  NvReport is_nv(GroupPtr const& g, FieldSpec field, SearchOptions const& options = {});

  struct SimpleDimReport {
    std::size_t               raw       = 0;  // sections with T/S isomorphic to P
    std::size_t               dimension = 0;  // after the structural test on T
    std::vector<SectionClass> counted;
    std::vector<SectionClass> excluded;
  };

  //! Throws PreconditionError unless P is a p-group other than 1 and C_p x C_p.
  SimpleDimReport simple_dim_p_group(GroupPtr const& p, GroupPtr const& g);

  //! T is the direct product of a p-group and a cyclic group.
  bool is_p_group_times_cyclic(FiniteGroup const& t, std::size_t p);

  struct SelfDualReport {
    bool                direct = false;
    std::optional<bool> classification;  // nilpotent inputs only
    std::string         witness;         // a subgroup that is not a quotient
  };

  SelfDualReport is_s_self_dual(GroupPtr const& g);
  //! Classification predicate for p-groups.
  bool classified_s_self_dual_p_group(GroupPtr const& p);

  bool is_semisimple(FiniteGroup const& g, FieldSpec field);

  //! Nullity of the trace form of the regular representation of QB(G,G).
  std::size_t radical_dim_char0(GroupPtr const& g, Budget const& budget = Budget());

  //! Gram matrix of (u, v) -> tr(u o v) on the canonical basis of B(G,G).
  IntMatrix trace_gram_matrix(GroupPtr const& g);
  struct GramRank {
    std::size_t rank;
    std::size_t dimension;
  };
  GramRank trace_gram_rank(GroupPtr const& g, FieldSpec field);

  //! The action of B(G,G) on B(G) = B(G,1), one matrix per basis label.  The
  //! basis of B(G) is the list of subgroup classes of G.
  struct ModuleActionSet {
    GroupPtr            g;
    FieldSpec           field;
    std::vector<Matrix> matrices;
  };
  ModuleActionSet burnside_module_matrices(GroupPtr const& g, FieldSpec field);
  //! Abelian G only: ((G x G)/X) . G/L = |p2(X) \ G / L| . G/(X . L).
  ModuleActionSet burnside_module_matrices_abelian(GroupPtr const& g, FieldSpec field);

  struct SubmoduleReport {
    std::size_t n_dim            = 0;
    bool        n_invariant      = false;
    std::size_t n_prime_dim      = 0;
    bool        n_prime_invariant = false;
  };
  //! G cyclic of prime-power order.  N(G) = {sum lambda = 0} and
  //! N'(G) = N(G) with lambda_G = 0.
  SubmoduleReport check_submodules(GroupPtr const& g, FieldSpec field);

  //! Number of labels with |q(L)| = |H|, counted through automorphism graphs.
  std::size_t essential_quotient_dim(GroupPtr const& h, FieldSpec field);
  //! Same count read off the full canonical basis of B(H,H).
  std::size_t essential_quotient_dim_from_basis(GroupPtr const& h);

}  // namespace biset

#endif  // BISET_FUNCTOR_HPP_
