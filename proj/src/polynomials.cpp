#include "pcf/polynomials.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>

#include "pcf/errors.hpp"

namespace pcf {
namespace {

const mpz_class kZero = 0;

std::size_t bits_of(const mpz_class& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

std::size_t bit_length(std::size_t n) {
  std::size_t b = 0;
  while (n) {
    ++b;
    n >>= 1;
  }
  return b;
}

// Kronecker substitution with limb-aligned slots: coefficient i occupies limbs
// [i*K, (i+1)*K) of the packed integer. Signed coefficients are handled by
// packing positive and negative parts separately.
mpz_class kronecker_pack(std::span<const mpz_class> coeffs, std::size_t K) {
  const std::size_t total = coeffs.size() * K;
  mpz_class pos, neg;
  mp_limb_t* pl = mpz_limbs_write(pos.get_mpz_t(), static_cast<mp_size_t>(total));
  mp_limb_t* nl = mpz_limbs_write(neg.get_mpz_t(), static_cast<mp_size_t>(total));
  std::fill(pl, pl + total, 0);
  std::fill(nl, nl + total, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const mpz_srcptr c = coeffs[i].get_mpz_t();
    const std::size_t n = mpz_size(c);
    const mp_limb_t* src = mpz_limbs_read(c);
    mp_limb_t* dst = (mpz_sgn(c) < 0 ? nl : pl) + i * K;
    std::copy(src, src + n, dst);
    any_neg = any_neg || mpz_sgn(c) < 0;
  }
  mpz_limbs_finish(pos.get_mpz_t(), static_cast<mp_size_t>(total));
  mpz_limbs_finish(neg.get_mpz_t(), static_cast<mp_size_t>(total));
  if (any_neg) pos -= neg;
  return pos;
}

// Inverse of kronecker_pack for `count` balanced digits of K limbs each.
// Returns false when the integer does not fit in `count` digits.
bool kronecker_unpack(const mpz_class& value, std::size_t K, std::size_t count,
                      std::vector<mpz_class>& out) {
  out.assign(count, 0);
  const int s = sgn(value);
  if (s == 0) return true;
  const std::size_t size = mpz_size(value.get_mpz_t());
  const mp_limb_t* limbs = mpz_limbs_read(value.get_mpz_t());
  mpz_class half = 1, full = 1;
  mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), 64 * K - 1);
  mpz_mul_2exp(full.get_mpz_t(), full.get_mpz_t(), 64 * K);
  int carry = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t lo = i * K;
    mpz_class v;
    if (lo < size) {
      const std::size_t n = std::min(K, size - lo);
      mpz_t view;
      mpz_roinit_n(view, limbs + lo, static_cast<mp_size_t>(n));
      v = mpz_class(view);
    }
    v += carry;
    if (v >= half) {
      v -= full;
      carry = 1;
    } else {
      carry = 0;
    }
    out[i] = s > 0 ? v : mpz_class(-v);
  }
  if (carry != 0) return false;
  return count * K >= size;
}

std::vector<mpz_class> mul_schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  std::vector<mpz_class> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

std::size_t max_bits(std::span<const mpz_class> c) {
  std::size_t m = 0;
  for (const auto& x : c) m = std::max(m, bits_of(x));
  return m;
}

std::vector<mpz_class> mul_kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  const std::size_t bound =
      max_bits(a) + max_bits(b) + bit_length(std::min(a.size(), b.size())) + 1;
  const std::size_t K = bound / 64 + 1;
  mpz_class pa = kronecker_pack(a, K);
  mpz_class pb = kronecker_pack(b, K);
  mpz_class prod = (a.data() == b.data() && a.size() == b.size()) ? mpz_class(pa * pa)
                                                                   : mpz_class(pa * pb);
  std::vector<mpz_class> r;
  kronecker_unpack(prod, K, a.size() + b.size() - 1, r);
  return r;
}

std::vector<mpz_class> multiply(std::span<const mpz_class> a, std::span<const mpz_class> b) {
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) < 12) return mul_schoolbook(a, b);
  return mul_kronecker(a, b);
}

// Long division by q; requires lc(q) to divide every leading term met.
bool divide_schoolbook(const IntPolynomial& p, const IntPolynomial& q,
                       std::vector<mpz_class>& quot) {
  std::vector<mpz_class> r(p.coeffs().begin(), p.coeffs().end());
  const long dq = q.degree();
  const long dp = p.degree();
  quot.assign(static_cast<std::size_t>(dp - dq + 1), 0);
  const mpz_class& lc = q.leading();
  for (long k = dp - dq; k >= 0; --k) {
    mpz_class& top = r[static_cast<std::size_t>(k + dq)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    quot[static_cast<std::size_t>(k)] = t;
    for (long j = 0; j <= dq; ++j) {
      mpz_submul(r[static_cast<std::size_t>(k + j)].get_mpz_t(), t.get_mpz_t(),
                 q.coeff(static_cast<std::size_t>(j)).get_mpz_t());
    }
  }
  for (long i = 0; i < dq; ++i)
    if (r[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

// Exact division through one big-integer division. The quotient's
// coefficients are bounded by 2^deg(r) ||p||_2 (Mignotte), which sizes the
// slots; the product check afterwards rejects non-divisible inputs.
bool divide_kronecker(const IntPolynomial& p, const IntPolynomial& q,
                      std::vector<mpz_class>& quot) {
  const std::size_t dr = static_cast<std::size_t>(p.degree() - q.degree());
  const std::size_t bound = p.max_coeff_bits() + bit_length(p.coeffs().size()) + dr + 2;
  const std::size_t K = bound / 64 + 1;
  mpz_class pv = kronecker_pack(p.coeffs(), K);
  mpz_class qv = kronecker_pack(q.coeffs(), K);
  if (!mpz_divisible_p(pv.get_mpz_t(), qv.get_mpz_t())) return false;
  mpz_class rv;
  mpz_divexact(rv.get_mpz_t(), pv.get_mpz_t(), qv.get_mpz_t());
  if (!kronecker_unpack(rv, K, dr + 1, quot)) return false;
  return IntPolynomial(quot) * q == p;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::monomial(const mpz_class& c, std::size_t k) {
  std::vector<mpz_class> v(k + 1);
  v[k] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const mpz_class& IntPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const mpz_class& IntPolynomial::leading() const {
  return coeffs_.empty() ? kZero : coeffs_.back();
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (sgn(leading()) < 0) g = -g;
  if (g == 1) return *this;
  std::vector<mpz_class> v(coeffs_.size());
  for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

mpz_class IntPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& c : coeffs_)
    if (mpz_cmpabs(c.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(c);
  return h;
}

std::size_t IntPolynomial::max_coeff_bits() const { return max_bits(coeffs_); }

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& o) {
  *this = *this * o;
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const mpz_class& s) {
  if (s == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  return IntPolynomial(multiply(a.coeffs_, b.coeffs_));
}

IntPolynomial operator-(IntPolynomial a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPolynomial& p) { return os << p.to_string(); }

IntPolynomial pow(const IntPolynomial& p, unsigned long e) {
  IntPolynomial result = IntPolynomial::constant(1);
  IntPolynomial base = p;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

IntPolynomial compose(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero()) return {};
  IntPolynomial r = IntPolynomial::constant(p.leading());
  for (long i = p.degree() - 1; i >= 0; --i) {
    r = r * q;
    r += IntPolynomial::constant(p.coeff(static_cast<std::size_t>(i)));
  }
  return r;
}

Rational evaluate_exact(const IntPolynomial& p, const Rational& a) {
  if (p.is_zero()) return 0;
  const mpz_class& num = a.get_num();
  const mpz_class& den = a.get_den();
  // Homogeneous Horner: acc = sum c_i num^i den^(n-i); value = acc / den^n.
  mpz_class acc = p.leading();
  mpz_class dpow = 1;
  for (long i = p.degree() - 1; i >= 0; --i) {
    dpow *= den;
    acc *= num;
    mpz_addmul(acc.get_mpz_t(), p.coeff(static_cast<std::size_t>(i)).get_mpz_t(), dpow.get_mpz_t());
  }
  Rational r(acc, dpow);
  r.canonicalize();
  return r;
}

mpz_class evaluate_exact(const IntPolynomial& p, const mpz_class& a) {
  mpz_class acc = 0;
  for (long i = p.degree(); i >= 0; --i) {
    acc *= a;
    acc += p.coeff(static_cast<std::size_t>(i));
  }
  return acc;
}

IntPolynomial divide_exact(const IntPolynomial& p, const IntPolynomial& q) {
  if (q.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  if (p.is_zero()) return {};
  if (p.degree() < q.degree()) throw Error(ErrorKind::NotDivisible, "degree of divisor exceeds dividend");
  std::vector<mpz_class> quot;
  const bool large = q.degree() >= 32 && p.degree() - q.degree() >= 32;
  const bool ok = large ? divide_kronecker(p, q, quot) : divide_schoolbook(p, q, quot);
  if (!ok) throw Error(ErrorKind::NotDivisible, "nonzero remainder or non-integral quotient");
  return IntPolynomial(std::move(quot));
}

IntPolynomial pseudo_remainder(const IntPolynomial& p, const IntPolynomial& q) {
  if (q.is_zero()) throw Error(ErrorKind::InvalidArgument, "pseudo-remainder by zero");
  const long dq = q.degree();
  if (p.degree() < dq) return p;
  std::vector<mpz_class> r(p.coeffs().begin(), p.coeffs().end());
  const mpz_class& lc = q.leading();
  long e = p.degree() - dq + 1;
  long top = p.degree();
  while (top >= dq) {
    const mpz_class t = r[static_cast<std::size_t>(top)];
    if (t != 0) {
      // r <- lc * r - t * t^(top-dq) * q
      for (auto& c : r) c *= lc;
      for (long j = 0; j <= dq; ++j) {
        mpz_submul(r[static_cast<std::size_t>(top - dq + j)].get_mpz_t(), t.get_mpz_t(),
                   q.coeff(static_cast<std::size_t>(j)).get_mpz_t());
      }
      --e;
    }
    r.resize(static_cast<std::size_t>(top));
    --top;
    while (top >= dq && r[static_cast<std::size_t>(top)] == 0) {
      r.resize(static_cast<std::size_t>(top));
      --top;
    }
  }
  IntPolynomial rem(std::move(r));
  if (e > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(e));
    rem *= f;
  }
  return rem;
}

namespace {

IntPolynomial divide_by_scalar(const IntPolynomial& p, const mpz_class& s) {
  std::vector<mpz_class> v(p.coeffs().begin(), p.coeffs().end());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
  return IntPolynomial(std::move(v));
}

mpz_class zpow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

mpz_class resultant(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::InvalidArgument, "resultant of zero polynomial");
  IntPolynomial A = p, B = q;
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() * B.degree()) % 2 != 0) s = -s;
  }
  if (B.degree() == 0) return s * zpow(B.leading(), static_cast<unsigned long>(A.degree()));

  const mpz_class a = A.content();
  const mpz_class b = B.content();
  A = divide_by_scalar(A, a);
  B = divide_by_scalar(B, b);
  const mpz_class t = zpow(a, static_cast<unsigned long>(B.degree())) *
                      zpow(b, static_cast<unsigned long>(A.degree()));
  mpz_class g = 1, h = 1;
  for (;;) {
    const long delta = A.degree() - B.degree();
    if (A.degree() % 2 != 0 && B.degree() % 2 != 0) s = -s;
    IntPolynomial R = pseudo_remainder(A, B);
    A = std::move(B);
    if (R.is_zero()) return 0;
    B = divide_by_scalar(R, g * zpow(h, static_cast<unsigned long>(delta)));
    g = A.leading();
    // h <- h^(1-delta) g^delta
    if (delta == 0) {
      // unchanged
    } else {
      mpz_class num = zpow(g, static_cast<unsigned long>(delta));
      mpz_class den = zpow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() <= 0) break;
  }
  // h <- h^(1-deg A) lc(B)^deg A
  const unsigned long da = static_cast<unsigned long>(A.degree());
  mpz_class num = zpow(B.leading(), da);
  mpz_class den = zpow(h, da - 1);
  mpz_class hr;
  mpz_divexact(hr.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return s * t * hr;
}

IntPolynomial gcd(const IntPolynomial& p, const IntPolynomial& q) {
  IntPolynomial A = p, B = q;
  if (A.degree() < B.degree()) std::swap(A, B);
  if (B.is_zero()) return A.primitive_part() * A.content();
  mpz_class d;
  mpz_class a = A.content(), b = B.content();
  mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  A = A.primitive_part();
  B = B.primitive_part();
  mpz_class g = 1, h = 1;
  for (;;) {
    const long delta = A.degree() - B.degree();
    IntPolynomial R = pseudo_remainder(A, B);
    if (R.is_zero()) break;
    if (R.degree() == 0) {
      B = IntPolynomial::constant(1);
      break;
    }
    A = std::move(B);
    B = divide_by_scalar(R, g * zpow(h, static_cast<unsigned long>(delta)));
    g = A.leading();
    if (delta != 0) {
      mpz_class num = zpow(g, static_cast<unsigned long>(delta));
      mpz_class den = zpow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    // Keep coefficients small: the subresultant scaling is only needed for
    // exactness of the next division, which primitive parts also provide.
    if (B.degree() > 0 && B.max_coeff_bits() > 4 * A.max_coeff_bits() + 64) {
      A = A.primitive_part();
      B = B.primitive_part();
      g = 1;
      h = 1;
    }
  }
  return B.primitive_part() * d;
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree part of zero");
  if (p.degree() == 0) return IntPolynomial::constant(1);
  IntPolynomial g = gcd(p, p.derivative());
  return divide_exact(p.primitive_part(), g.primitive_part()).primitive_part();
}

namespace modp {

namespace {
using u128 = unsigned __int128;

unsigned long mulmod(unsigned long a, unsigned long b, unsigned long p) {
  return static_cast<unsigned long>(static_cast<u128>(a) * b % p);
}

unsigned long inverse(unsigned long a, unsigned long p) {
  // Fermat: a^(p-2).
  unsigned long r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
}  // namespace

long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

Poly reduce(const IntPolynomial& f, unsigned long p) {
  Poly r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = mpz_fdiv_ui(f.coeff(i).get_mpz_t(), p);
  trim(r);
  return r;
}

Poly derivative(const Poly& a, unsigned long p) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
  trim(d);
  return d;
}

Poly gcd(Poly a, Poly b, unsigned long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    const unsigned long inv = inverse(b.back(), p);
    while (a.size() >= b.size()) {
      const unsigned long f = mulmod(a.back(), inv, p);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + p - mulmod(f, b[j], p)) % p;
      }
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    const unsigned long inv = inverse(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

}  // namespace modp

bool is_squarefree(const IntPolynomial& p) {
  if (p.is_zero()) return false;
  if (p.degree() <= 1) return true;
  static constexpr std::array<unsigned long, 10> primes = {
      2, 3, 5, 7, 11, 13, 1000003, 1000033, 2147483647, 2147483629};
  for (unsigned long q : primes) {
    if (mpz_divisible_ui_p(p.leading().get_mpz_t(), q)) continue;
    modp::Poly f = modp::reduce(p, q);
    modp::Poly g = modp::gcd(f, modp::derivative(f, q), q);
    if (modp::degree(g) == 0) return true;
  }
  return gcd(p, p.derivative()).degree() == 0;
}

std::string serialize(const IntPolynomial& p) {
  std::string out = "deg=" + std::to_string(p.degree()) + "\n";
  for (const auto& c : p.coeffs()) {
    out += c.get_str();
    out += '\n';
  }
  return out;
}

IntPolynomial parse_polynomial(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("deg=", 0) != 0)
    throw Error(ErrorKind::InvalidArgument, "polynomial text must start with 'deg=<n>'");
  long deg = 0;
  try {
    deg = std::stol(line.substr(4));
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidArgument, "bad degree header '" + line + "'");
  }
  if (deg < -1) throw Error(ErrorKind::InvalidArgument, "bad degree header '" + line + "'");
  std::vector<mpz_class> coeffs;
  coeffs.reserve(static_cast<std::size_t>(deg + 1));
  for (long i = 0; i <= deg; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorKind::InvalidArgument, "truncated polynomial text");
    mpz_class c;
    if (c.set_str(line, 10) != 0) throw Error(ErrorKind::InvalidArgument, "bad coefficient '" + line + "'");
    coeffs.push_back(std::move(c));
  }
  IntPolynomial p(std::move(coeffs));
  if (p.degree() != deg) throw Error(ErrorKind::InvalidArgument, "leading coefficient is zero");
  return p;
}

}  // namespace pcf
