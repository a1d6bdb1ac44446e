#ifndef BISET_LINALG_HPP_
#define BISET_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "biset/field.hpp"
#include "biset/span.hpp"

namespace biset {

  //! Dense matrix of scalars over one field.
  class Matrix {
   public:
    Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar(field, 0)) {}

    FieldSpec const& field() const noexcept {
      return field_;
    }
    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }
    Scalar& at(std::size_t i, std::size_t j) {
      return data_[i * cols_ + j];
    }
    Scalar const& at(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    static Matrix identity(FieldSpec field, std::size_t n);
    Matrix        operator*(Matrix const& other) const;
    std::vector<Scalar> apply(std::vector<Scalar> const& x) const;  // M x
    bool          operator==(Matrix const& other) const;

   private:
    FieldSpec           field_;
    std::size_t         rows_, cols_;
    std::vector<Scalar> data_;
  };

  std::size_t rank(Matrix const& m);
  //! Basis of {x : M x = 0}, one vector per non-pivot column.
  std::vector<std::vector<Scalar>> null_space(Matrix const& m);

  //! Integer matrices, used for Gram matrices with integral entries.
  using IntMatrix = std::vector<std::vector<long long>>;

  //! Dense elimination mod p.
  std::size_t rank_mod_p(IntMatrix const& m, std::uint64_t p);
  //! Exact rank over Q (fraction-free).
  std::size_t rank_rational(IntMatrix const& m);
  //! Exact rational null space {x : M x = 0}.
  std::vector<std::vector<mpq_class>> null_space_rational(IntMatrix const& m);

  //! Row i of M as a sparse integer vector for the rational span.
  SparseVector<mpz_class> sparse_row(std::vector<long long> const& row);

}  // namespace biset

#endif  // BISET_LINALG_HPP_
