#include "biset/field.hpp"

#include <stdexcept>

#include "biset/group.hpp"

namespace biset {

  FieldSpec::FieldSpec(std::uint64_t characteristic) : p_(characteristic) {
    if (p_ != 0 && (p_ >= (std::uint64_t{1} << 62) || !is_prime(p_))) {
      throw PreconditionError("field characteristic must be 0 or a prime, got "
                              + std::to_string(p_));
    }
  }

  std::string FieldSpec::name() const {
    return p_ == 0 ? "Q" : "F_" + std::to_string(p_);
  }

  PrimeField::value_type PrimeField::reduce(mpz_class const& x) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
    return r.get_ui();
  }

  PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const noexcept {
    value_type r = 1 % p;
    while (e > 0) {
      if (e & 1) {
        r = mul(r, a);
      }
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  PrimeField::value_type PrimeField::inv(value_type a) const {
    if (a == 0) {
      throw std::domain_error("division by zero in F_" + std::to_string(p));
    }
    return pow(a, p - 2);
  }

  Scalar::Scalar(FieldSpec field, long long value) : field_(field) {
    if (field_.is_rational()) {
      q_ = mpq_class(static_cast<long>(value));
    } else {
      r_ = PrimeField{field_.characteristic()}.reduce(value);
    }
  }

  Scalar::Scalar(FieldSpec field, mpq_class const& value) : field_(field) {
    if (field_.is_rational()) {
      q_ = value;
      q_.canonicalize();
    } else {
      PrimeField f{field_.characteristic()};
      mpq_class  v = value;
      v.canonicalize();
      r_ = f.mul(f.reduce(v.get_num()), f.inv(f.reduce(v.get_den())));
    }
  }

  bool Scalar::is_zero() const noexcept {
    return field_.is_rational() ? sgn(q_) == 0 : r_ == 0;
  }

  void Scalar::check_same(Scalar const& o) const {
    if (!(field_ == o.field_)) {
      throw PreconditionError("scalars over different fields: " + field_.name() + " and "
                              + o.field_.name());
    }
  }

  Scalar Scalar::operator+(Scalar const& o) const {
    check_same(o);
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ += o.q_;
    } else {
      s.r_ = PrimeField{field_.characteristic()}.add(r_, o.r_);
    }
    return s;
  }

  Scalar Scalar::operator-(Scalar const& o) const {
    return *this + (-o);
  }

  Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ = -q_;
    } else {
      s.r_ = PrimeField{field_.characteristic()}.neg(r_);
    }
    return s;
  }

  Scalar Scalar::operator*(Scalar const& o) const {
    check_same(o);
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ *= o.q_;
    } else {
      s.r_ = PrimeField{field_.characteristic()}.mul(r_, o.r_);
    }
    return s;
  }

  Scalar Scalar::operator/(Scalar const& o) const {
    check_same(o);
    if (o.is_zero()) {
      throw std::domain_error("division by zero");
    }
    Scalar s = *this;
    if (field_.is_rational()) {
      s.q_ /= o.q_;
    } else {
      PrimeField f{field_.characteristic()};
      s.r_ = f.mul(r_, f.inv(o.r_));
    }
    return s;
  }

  bool Scalar::operator==(Scalar const& o) const {
    return field_ == o.field_ && (field_.is_rational() ? q_ == o.q_ : r_ == o.r_);
  }

  std::string Scalar::to_string() const {
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
  }

  Scalar Scalar::parse(FieldSpec field, std::string const& text) {
    if (text.empty()) {
      throw std::invalid_argument("empty scalar");
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
      throw std::invalid_argument("bad scalar '" + text + "'");
    }
    q.canonicalize();
    return Scalar(field, q);
  }

}  // namespace biset
