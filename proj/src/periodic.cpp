#include "dvlg/periodic.hpp"

#include <algorithm>
#include <string>

#include "dvlg/error.hpp"

namespace dvlg::periodic {

namespace {

template <typename T>
bool is_doubled(const std::vector<T>& v) {
  const std::size_t half = v.size() / 2;
  return std::equal(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(half), v.begin() + static_cast<std::ptrdiff_t>(half));
}

template <typename T>
std::vector<T> repeat_to(const std::vector<T>& v, std::size_t length) {
  std::vector<T> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(v[i % v.size()]);
  return out;
}

void check_length(unsigned k, std::size_t size) {
  if (k >= 8 * sizeof(std::size_t) - 1 || size != (std::size_t{1} << k))
    throw Error(ErrorKind::BadLength,
                "expected 2^" + std::to_string(k) + " entries, got " + std::to_string(size));
}

}  // namespace

PeriodicFn normalize(unsigned k, std::vector<Rational> vals) {
  check_length(k, vals.size());
  while (k > 0 && is_doubled(vals)) {
    vals.resize(vals.size() / 2);
    --k;
  }
  PeriodicFn f;
  f.k_ = k;
  f.vals_ = std::move(vals);
  return f;
}

PeriodicSet normalize_set(unsigned k, std::vector<bool> mask) {
  check_length(k, mask.size());
  while (k > 0 && is_doubled(mask)) {
    mask.resize(mask.size() / 2);
    --k;
  }
  PeriodicSet c;
  c.k_ = k;
  c.mask_ = std::move(mask);
  return c;
}

PeriodicSet PeriodicSet::top() { return normalize_set(0, {true}); }

PeriodicFn PeriodicFn::constant(const Rational& c) { return normalize(0, {c}); }

std::vector<Rational> PeriodicFn::lifted(unsigned k) const {
  if (k < k_) throw Error(ErrorKind::BadLength, "cannot lift to a shorter period");
  return repeat_to(vals_, std::size_t{1} << k);
}

bool PeriodicFn::is_nonneg() const {
  return std::all_of(vals_.begin(), vals_.end(), [](const Rational& r) { return r.sign() >= 0; });
}

PeriodicSet PeriodicSet::from_indices(unsigned k, const std::vector<std::size_t>& indices) {
  check_length(k, std::size_t{1} << k);
  std::vector<bool> mask(std::size_t{1} << k, false);
  for (std::size_t i : indices) {
    if (i >= mask.size()) throw Error(ErrorKind::BadLength, "index " + std::to_string(i) + " outside period");
    mask[i] = true;
  }
  return normalize_set(k, std::move(mask));
}

std::vector<bool> PeriodicSet::lifted(unsigned k) const {
  if (k < k_) throw Error(ErrorKind::BadLength, "cannot lift to a shorter period");
  return repeat_to(mask_, std::size_t{1} << k);
}

std::vector<std::size_t> PeriodicSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask_.size(); ++i)
    if (mask_[i]) out.push_back(i);
  return out;
}

PeriodicFn periodic_op(GroupOp kind, const PeriodicFn& f, const PeriodicFn& g) {
  if (kind == GroupOp::Neg) throw Error(ErrorKind::PreconditionViolated, "neg takes one operand");
  const unsigned k = std::max(f.k(), g.k());
  auto a = f.lifted(k), b = g.lifted(k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    switch (kind) {
      case GroupOp::Add: a[i] += b[i]; break;
      case GroupOp::Meet: a[i] = std::min(a[i], b[i]); break;
      case GroupOp::Join: a[i] = std::max(a[i], b[i]); break;
      case GroupOp::Neg: break;
    }
  }
  return normalize(k, std::move(a));
}

PeriodicFn periodic_op(GroupOp kind, const PeriodicFn& f) {
  if (kind != GroupOp::Neg) throw Error(ErrorKind::PreconditionViolated, "binary op given one operand");
  return scale(Rational(-1), f);
}

PeriodicFn scale(const Rational& q, const PeriodicFn& f) {
  std::vector<Rational> v = f.vals();
  for (auto& x : v) x *= q;
  return normalize(f.k(), std::move(v));
}

PeriodicSet set_op(SubsetOp kind, const PeriodicSet& c, const PeriodicSet& d) {
  if (kind == SubsetOp::Complement) throw Error(ErrorKind::PreconditionViolated, "complement takes one operand");
  const unsigned k = std::max(c.k(), d.k());
  auto a = c.lifted(k), b = d.lifted(k);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = kind == SubsetOp::Meet ? (a[i] && b[i]) : (a[i] || b[i]);
  return normalize_set(k, std::move(a));
}

PeriodicSet set_op(SubsetOp kind, const PeriodicSet& c) {
  if (kind != SubsetOp::Complement) throw Error(ErrorKind::PreconditionViolated, "binary op given one operand");
  std::vector<bool> m = c.mask();
  m.flip();
  return normalize_set(c.k(), std::move(m));
}

bool below(const PeriodicSet& c, const PeriodicSet& d) {
  const unsigned k = std::max(c.k(), d.k());
  const auto a = c.lifted(k), b = d.lifted(k);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

bool leq(const PeriodicFn& f, const PeriodicFn& g) {
  const unsigned k = std::max(f.k(), g.k());
  const auto a = f.lifted(k), b = g.lifted(k);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool less(const PeriodicFn& f, const PeriodicFn& g) { return leq(f, g) && !(f == g); }

PeriodicSet periodic_valuation(const PeriodicFn& f) {
  std::vector<bool> m(f.period());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f.vals()[i].sign() >= 0;
  return normalize_set(f.k(), std::move(m));
}

PeriodicSet zero_set(const PeriodicFn& f) {
  std::vector<bool> m(f.period());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f.vals()[i].is_zero();
  return normalize_set(f.k(), std::move(m));
}

StageSet stage_valuation(const StageVector& v) {
  check_length(v.n, v.vals.size());
  StageSet out{v.n, std::vector<bool>(v.vals.size())};
  for (std::size_t i = 0; i < v.vals.size(); ++i) out.mask[i] = v.vals[i].sign() >= 0;
  return out;
}

StageVector alpha_embed(const StageVector& v) {
  check_length(v.n, v.vals.size());
  return {v.n + 1, repeat_to(v.vals, 2 * v.vals.size())};
}

StageSet beta_embed(const StageSet& c) {
  check_length(c.n, c.mask.size());
  return {c.n + 1, repeat_to(c.mask, 2 * c.mask.size())};
}

PeriodicFn to_limit(const StageVector& v) { return normalize(v.n, v.vals); }
PeriodicSet to_limit(const StageSet& c) { return normalize_set(c.n, c.mask); }

PeriodicSet split_nonempty(const PeriodicSet& c) {
  if (c.is_empty()) throw Error(ErrorKind::EmptyInput, "cannot split the empty set");
  std::vector<bool> m = c.mask();
  m.resize(2 * m.size(), false);
  return normalize_set(c.k() + 1, std::move(m));
}

bool polar_equiv(const PeriodicFn& a, const PeriodicFn& b) {
  if (!a.is_nonneg() || !b.is_nonneg()) throw Error(ErrorKind::NegativeInput, "polar_equiv needs a, b >= 0");
  return periodic_valuation(-a) == periodic_valuation(-b);
}

unsigned long archimedean_bound(const PeriodicFn& f, const PeriodicFn& g) {
  const PeriodicFn zero;
  if (!less(zero, f) || !less(zero, g))
    throw Error(ErrorKind::PreconditionViolated, "archimedean_bound needs 0 < f and 0 < g");
  const unsigned k = std::max(f.k(), g.k());
  const auto fv = f.lifted(k), gv = g.lifted(k);
  // n*f <= g fails first at floor(g/f) + 1 over the points where f > 0;
  // before that, n*f < g can only fail through n*f = g.
  mpz_class first_exceed = 0;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (fv[i].sign() <= 0) continue;
    mpz_class q;
    const mpq_class ratio = gv[i].raw() / fv[i].raw();
    mpz_fdiv_q(q.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    q += 1;
    if (first_exceed == 0 || q < first_exceed) first_exceed = q;
  }
  mpz_class answer = first_exceed;
  // g = m*f for one integer m at most.
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (fv[i].sign() <= 0) continue;
    const Rational m = gv[i] / fv[i];
    if (m.is_integer() && m.sign() > 0 && m.num() < answer) {
      bool equal = true;
      for (std::size_t j = 0; j < fv.size() && equal; ++j) equal = m * fv[j] == gv[j];
      if (equal) answer = m.num();
    }
    break;
  }
  if (!answer.fits_ulong_p()) throw Error(ErrorKind::ResourceLimit, "archimedean bound exceeds machine range");
  return answer.get_ui();
}

PeriodicFn shift(const PeriodicFn& f) {
  std::vector<Rational> v = f.vals();
  std::rotate(v.begin(), v.begin() + 1, v.end());
  return normalize(f.k(), std::move(v));
}

PeriodicSet induced_lattice_auto(const PeriodicSet& c) {
  std::vector<bool> m = c.mask();
  std::rotate(m.begin(), m.begin() + 1, m.end());
  return normalize_set(c.k(), std::move(m));
}

}  // namespace dvlg::periodic
