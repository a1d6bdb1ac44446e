#ifndef BISET_SPAN_HPP_
#define BISET_SPAN_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "biset/field.hpp"
#include "biset/group.hpp"

namespace biset {

  //! Sorted (column, value) pairs with no explicit zeros.
  template <typename V>
  using SparseVector = std::vector<std::pair<std::uint32_t, V>>;

  //! The rationals, with echelon rows kept as primitive integer vectors.
  struct RationalField {
    using value_type = mpz_class;
  };

  namespace detail {
    template <typename Field>
    struct Coeff;
    template <>
    struct Coeff<PrimeField> {
      using type = std::uint64_t;
    };
    template <>
    struct Coeff<RationalField> {
      using type = mpq_class;
    };

    inline bool is_zero(std::uint64_t x) {
      return x == 0;
    }
    inline bool is_zero(mpz_class const& x) {
      return sgn(x) == 0;
    }
    inline bool is_zero(mpq_class const& x) {
      return sgn(x) == 0;
    }
  }  // namespace detail

  //! Incrementally built row space in reduced echelon form.
  //!
  //! Rows are sparse.  Over F_p every pivot is 1; over Q each row is a
  //! primitive integer vector with a positive pivot, and reduction is
  //! fraction-free.  Each stored row has zeros in every other pivot column,
  //! so reducing a vector only touches the rows named by its own support.
  //!
  //! Every accepted vector is kept together with a caller-chosen tag.  With
  //! provenance tracking on, each row also carries its expression in the
  //! accepted vectors; with it off, certificate() replays the accepted vectors
  //! into a tracking span.
  //!
  //! Not thread-safe, including the const members (they share scratch space).
  template <typename Field>
  class IncrementalSpan {
   public:
    using value_type  = typename Field::value_type;
    using coeff_type  = typename detail::Coeff<Field>::type;
    using Vector      = SparseVector<value_type>;
    using Combination = SparseVector<coeff_type>;  // indexed by acceptance order
    using Certificate = std::vector<std::pair<std::uint64_t, coeff_type>>;

    explicit IncrementalSpan(std::size_t dim, Field field = {}, bool track_provenance = false)
        : field_(field), dim_(dim), track_(track_provenance), pivot_row_(dim, -1),
          scratch_(dim), mark_(dim, 0) {}

    std::size_t dim() const noexcept {
      return dim_;
    }
    std::size_t rank() const noexcept {
      return rows_.size();
    }
    Field const& field() const noexcept {
      return field_;
    }

    //! Adds v (entries in any order, duplicates summed).  Returns true iff
    //! the rank grew.  Throws PreconditionError for an index >= dim.
    bool add(Vector v, std::uint64_t tag = 0) {
      normalize_input(v);
      value_type scale;
      Combination prov;
      Vector residual = reduce(v, &scale, track_ ? &prov : nullptr);
      if (residual.empty()) {
        return false;
      }
      std::uint32_t const id = static_cast<std::uint32_t>(sources_.size());
      if (track_) {
        // residual = scale * v - sum(...), and prov holds -sum(...)
        insert_sorted(prov, id, to_coeff(scale));
      }
      sources_.push_back(std::move(v));
      tags_.push_back(tag);
      make_primitive(residual, track_ ? &prov : nullptr);
      std::uint32_t const pc = residual.front().first;
      // clear the new pivot column from the existing rows
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        auto it = std::lower_bound(rows_[r].begin(), rows_[r].end(),
                                   std::pair<std::uint32_t, value_type>(pc, value_type()),
                                   [](auto const& a, auto const& b) { return a.first < b.first; });
        if (it == rows_[r].end() || it->first != pc) {
          continue;
        }
        eliminate(r, residual, track_ ? &prov : nullptr, it->second);
      }
      pivot_row_[pc] = static_cast<std::int32_t>(rows_.size());
      rows_.push_back(std::move(residual));
      pivots_.push_back(pc);
      if (track_) {
        provenance_.push_back(std::move(prov));
      }
      return true;
    }

    bool contains(Vector v) const {
      normalize_input(v);
      value_type scale;
      return reduce(v, &scale, nullptr).empty();
    }

    //! Coefficients c with v = sum c_i * (accepted vector with tag t_i).
    //! Throws PreconditionError when v is not in the span.
    Certificate certificate(Vector v) const {
      normalize_input(v);
      if (!contains(v)) {
        throw PreconditionError("certificate requested for a vector outside the span");
      }
      if (!track_) {
        IncrementalSpan replay(dim_, field_, true);
        for (std::size_t i = 0; i < sources_.size(); ++i) {
          replay.add(sources_[i], tags_[i]);
        }
        return replay.certificate(std::move(v));
      }
      // v = sum over pivots c in supp(v) of (v[c] / row_c[c]) * row_c
      std::vector<coeff_type> total(sources_.size(), coeff_type(0));
      for (auto const& [c, x] : v) {
        std::int32_t r = pivot_row_[c];
        if (r < 0) {
          continue;
        }
        coeff_type lambda = ratio(x, rows_[r].front().second);
        for (auto const& [id, y] : provenance_[r]) {
          total[id] = add_coeff(total[id], mul_coeff(lambda, y));
        }
      }
      Certificate cert;
      for (std::size_t i = 0; i < total.size(); ++i) {
        if (!detail::is_zero(total[i])) {
          cert.emplace_back(tags_[i], total[i]);
        }
      }
      return cert;
    }

    //! Reduced form of v modulo the span (zero iff v is a member).
    Vector residual(Vector v) const {
      normalize_input(v);
      value_type scale;
      Vector     r = reduce(v, &scale, nullptr);
      return r;
    }

    std::vector<Vector> const& rows() const noexcept {
      return rows_;
    }
    //! Row holding pivot column c, if any.
    std::optional<std::size_t> pivot_row(std::uint32_t c) const {
      return pivot_row_[c] < 0 ? std::nullopt
                               : std::optional<std::size_t>(static_cast<std::size_t>(pivot_row_[c]));
    }
    std::vector<Vector> const& sources() const noexcept {
      return sources_;
    }
    std::vector<std::uint64_t> const& tags() const noexcept {
      return tags_;
    }

    //! A vector x with row . x = 0 for every stored row and x_j = 1, for a
    //! non-pivot column j.
    SparseVector<coeff_type> annihilator(std::uint32_t j) const {
      if (pivot_row_[j] >= 0) {
        throw PreconditionError("annihilator requested at a pivot column");
      }
      SparseVector<coeff_type> x;
      x.emplace_back(j, coeff_type(1));
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        auto const& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(),
                                   std::pair<std::uint32_t, value_type>(j, value_type()),
                                   [](auto const& a, auto const& b) { return a.first < b.first; });
        if (it != row.end() && it->first == j) {
          x.emplace_back(row.front().first, neg_coeff(ratio(it->second, row.front().second)));
        }
      }
      std::sort(x.begin(), x.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
      return x;
    }

   private:
    static coeff_type to_coeff(value_type const& v) {
      if constexpr (std::is_same_v<Field, PrimeField>) {
        return v;
      } else {
        return mpq_class(v);
      }
    }
    coeff_type ratio(value_type const& a, value_type const& b) const {
      if constexpr (std::is_same_v<Field, PrimeField>) {
        return field_.mul(a, field_.inv(b));
      } else {
        mpq_class q(a, b);
        q.canonicalize();
        return q;
      }
    }
    coeff_type add_coeff(coeff_type const& a, coeff_type const& b) const {
      if constexpr (std::is_same_v<Field, PrimeField>) {
        return field_.add(a, b);
      } else {
        return a + b;
      }
    }
    coeff_type mul_coeff(coeff_type const& a, coeff_type const& b) const {
      if constexpr (std::is_same_v<Field, PrimeField>) {
        return field_.mul(a, b);
      } else {
        return a * b;
      }
    }
    coeff_type neg_coeff(coeff_type const& a) const {
      if constexpr (std::is_same_v<Field, PrimeField>) {
        return field_.neg(a);
      } else {
        return -a;
      }
    }

    template <typename T>
    static void insert_sorted(SparseVector<T>& v, std::uint32_t idx, T const& value) {
      auto it = std::lower_bound(v.begin(), v.end(), idx,
                                 [](auto const& a, std::uint32_t b) { return a.first < b; });
      v.insert(it, {idx, value});
    }

    void normalize_input(Vector& v) const {
      std::sort(v.begin(), v.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
      Vector out;
      out.reserve(v.size());
      for (auto& [c, x] : v) {
        if (c >= dim_) {
          throw PreconditionError("vector index " + std::to_string(c) + " outside dimension "
                                  + std::to_string(dim_));
        }
        if constexpr (std::is_same_v<Field, PrimeField>) {
          x %= field_.p;
        }
        if (!out.empty() && out.back().first == c) {
          if constexpr (std::is_same_v<Field, PrimeField>) {
            out.back().second = field_.add(out.back().second, x);
          } else {
            out.back().second += x;
          }
        } else {
          out.emplace_back(c, x);
        }
      }
      std::erase_if(out, [](auto const& e) { return detail::is_zero(e.second); });
      v = std::move(out);
    }

    void touch(std::uint32_t c) const {
      if (!mark_[c]) {
        mark_[c] = 1;
        touched_.push_back(c);
        scratch_[c] = value_type(0);
      }
    }

    // Returns scale * v - sum(lambda_c row_c) with all pivot entries of v
    // cleared.  When prov is given it receives -sum(lambda_c prov_c).
    Vector reduce(Vector const& v, value_type* scale, Combination* prov) const {
      touched_.clear();
      if constexpr (std::is_same_v<Field, PrimeField>) {
        *scale = 1;
        for (auto const& [c, x] : v) {
          touch(c);
          scratch_[c] = x;
        }
        std::vector<coeff_type> pacc;
        for (auto const& [c, x] : v) {
          std::int32_t r = pivot_row_[c];
          if (r < 0) {
            continue;
          }
          value_type const lambda = x;  // pivot is 1
          for (auto const& [k, y] : rows_[r]) {
            touch(k);
            scratch_[k] = field_.sub(scratch_[k], field_.mul(lambda, y));
          }
          if (prov) {
            accumulate(pacc, provenance_[r], field_.neg(lambda));
          }
        }
        if (prov) {
          *prov = to_sparse(pacc);
        }
      } else {
        mpz_class d = 1;
        for (auto const& [c, x] : v) {
          std::int32_t r = pivot_row_[c];
          if (r >= 0) {
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), rows_[r].front().second.get_mpz_t());
          }
        }
        *scale = d;
        for (auto const& [c, x] : v) {
          touch(c);
          scratch_[c] = d * x;
        }
        std::vector<coeff_type> pacc;
        mpz_class               factor;
        for (auto const& [c, x] : v) {
          std::int32_t r = pivot_row_[c];
          if (r < 0) {
            continue;
          }
          mpz_divexact(factor.get_mpz_t(), d.get_mpz_t(), rows_[r].front().second.get_mpz_t());
          factor *= x;
          for (auto const& [k, y] : rows_[r]) {
            touch(k);
            scratch_[k] -= factor * y;
          }
          if (prov) {
            accumulate(pacc, provenance_[r], mpq_class(-factor));
          }
        }
        if (prov) {
          *prov = to_sparse(pacc);
        }
      }
      std::sort(touched_.begin(), touched_.end());
      Vector out;
      for (std::uint32_t c : touched_) {
        mark_[c] = 0;
        if (!detail::is_zero(scratch_[c])) {
          out.emplace_back(c, std::move(scratch_[c]));
        }
      }
      return out;
    }

    void accumulate(std::vector<coeff_type>& acc, Combination const& comb,
                    coeff_type const& factor) const {
      if (acc.size() < sources_.size() + 1) {
        acc.resize(sources_.size() + 1, coeff_type(0));
      }
      for (auto const& [id, y] : comb) {
        acc[id] = add_coeff(acc[id], mul_coeff(factor, y));
      }
    }

    static Combination to_sparse(std::vector<coeff_type> const& acc) {
      Combination out;
      for (std::size_t i = 0; i < acc.size(); ++i) {
        if (!detail::is_zero(acc[i])) {
          out.emplace_back(static_cast<std::uint32_t>(i), acc[i]);
        }
      }
      return out;
    }

    // F_p: scale the pivot to 1.  Q: divide by the content, pivot positive.
    void make_primitive(Vector& row, Combination* prov) const {
      if constexpr (std::is_same_v<Field, PrimeField>) {
        value_type const s = field_.inv(row.front().second);
        for (auto& e : row) {
          e.second = field_.mul(e.second, s);
        }
        if (prov) {
          for (auto& e : *prov) {
            e.second = field_.mul(e.second, s);
          }
        }
      } else {
        mpz_class g = 0;
        for (auto const& e : row) {
          mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
          if (g == 1) {
            break;
          }
        }
        if (sgn(row.front().second) < 0) {
          g = -g;
        }
        if (g != 1) {
          for (auto& e : row) {
            mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
          }
          if (prov) {
            for (auto& e : *prov) {
              e.second /= g;
            }
          }
        }
      }
    }

    // rows_[r] <- combination clearing column of n's pivot, where a = rows_[r][pivot(n)].
    void eliminate(std::size_t r, Vector const& n, Combination const* nprov, value_type a) {
      Vector&      row = rows_[r];
      Vector       out;
      out.reserve(row.size() + n.size());
      std::size_t i = 0, j = 0;
      if constexpr (std::is_same_v<Field, PrimeField>) {
        while (i < row.size() || j < n.size()) {
          if (j == n.size() || (i < row.size() && row[i].first < n[j].first)) {
            out.push_back(row[i++]);
          } else if (i == row.size() || n[j].first < row[i].first) {
            out.emplace_back(n[j].first, field_.neg(field_.mul(a, n[j].second)));
            ++j;
          } else {
            value_type val = field_.sub(row[i].second, field_.mul(a, n[j].second));
            if (val != 0) {
              out.emplace_back(row[i].first, val);
            }
            ++i;
            ++j;
          }
        }
        row = std::move(out);
        if (nprov) {
          provenance_[r] = combine(provenance_[r], coeff_type(1), *nprov, field_.neg(a));
        }
      } else {
        mpz_class const b = n.front().second;
        while (i < row.size() || j < n.size()) {
          if (j == n.size() || (i < row.size() && row[i].first < n[j].first)) {
            out.emplace_back(row[i].first, b * row[i].second);
            ++i;
          } else if (i == row.size() || n[j].first < row[i].first) {
            out.emplace_back(n[j].first, -a * n[j].second);
            ++j;
          } else {
            mpz_class val = b * row[i].second - a * n[j].second;
            if (sgn(val) != 0) {
              out.emplace_back(row[i].first, std::move(val));
            }
            ++i;
            ++j;
          }
        }
        row = std::move(out);
        Combination* p = nullptr;
        if (nprov) {
          provenance_[r] = combine(provenance_[r], mpq_class(b), *nprov, mpq_class(-a));
          p              = &provenance_[r];
        }
        make_primitive(row, p);
      }
    }

    Combination combine(Combination const& x, coeff_type const& alpha, Combination const& y,
                        coeff_type const& beta) const {
      Combination out;
      std::size_t i = 0, j = 0;
      while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
          out.emplace_back(x[i].first, mul_coeff(alpha, x[i].second));
          ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
          out.emplace_back(y[j].first, mul_coeff(beta, y[j].second));
          ++j;
        } else {
          coeff_type val = add_coeff(mul_coeff(alpha, x[i].second), mul_coeff(beta, y[j].second));
          if (!detail::is_zero(val)) {
            out.emplace_back(x[i].first, std::move(val));
          }
          ++i;
          ++j;
        }
      }
      return out;
    }

    Field                      field_;
    std::size_t                dim_;
    bool                       track_;
    std::vector<Vector>        rows_;
    std::vector<std::uint32_t> pivots_;
    std::vector<std::int32_t>  pivot_row_;
    std::vector<Combination>   provenance_;
    std::vector<Vector>        sources_;
    std::vector<std::uint64_t> tags_;

    mutable std::vector<value_type>    scratch_;
    mutable std::vector<char>          mark_;
    mutable std::vector<std::uint32_t> touched_;
  };

  using ModularSpan  = IncrementalSpan<PrimeField>;
  using RationalSpan = IncrementalSpan<RationalField>;

}  // namespace biset

#endif  // BISET_SPAN_HPP_
