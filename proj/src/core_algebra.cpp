#include "dvlg/core_algebra.hpp"

#include <algorithm>
#include <string>

#include "dvlg/error.hpp"

namespace dvlg {

namespace {

void require_same_length(const GroupVector& f, const GroupVector& g) {
  if (f.size() != g.size())
    throw Error(ErrorKind::LengthMismatch,
                "lengths " + std::to_string(f.size()) + " and " + std::to_string(g.size()));
}

void require_same_width(const SubsetL& c, const SubsetL& d) {
  if (c.width() != d.width())
    throw Error(ErrorKind::WidthMismatch,
                "widths " + std::to_string(c.width()) + " and " + std::to_string(d.width()));
}

void require_nonneg(const GroupVector& f, const char* what) {
  if (!f.is_nonneg()) throw Error(ErrorKind::NegativeInput, std::string(what) + " must be >= 0");
}

}  // namespace

bool GroupVector::is_nonneg() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& r) { return r.sign() >= 0; });
}

bool GroupVector::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& r) { return r.is_zero(); });
}

SubsetL::SubsetL(std::size_t width, std::uint64_t bits) : width_(width), bits_(bits) {
  if (width > kMaxWidth) throw Error(ErrorKind::WidthMismatch, "subset width above 64");
  if ((bits & ~full_mask(width)) != 0) throw Error(ErrorKind::WidthMismatch, "subset bits exceed width");
}

SubsetL SubsetL::full(std::size_t width) { return SubsetL(width, full_mask(width)); }

SubsetL SubsetL::from_indices(std::size_t width, std::span<const std::size_t> indices) {
  std::uint64_t bits = 0;
  for (std::size_t i : indices) {
    if (i >= width) throw Error(ErrorKind::WidthMismatch, "index " + std::to_string(i) + " out of range");
    bits |= std::uint64_t{1} << i;
  }
  return SubsetL(width, bits);
}

std::vector<std::size_t> SubsetL::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

FinStdStructure::FinStdStructure(std::size_t n) : ground_size(n) {
  if (n == 0) throw Error(ErrorKind::PreconditionViolated, "ground set must be non-empty");
  if (n > SubsetL::kMaxWidth) throw Error(ErrorKind::ResourceLimit, "ground set above 64 points");
}

GroupVector pointwise_op(GroupOp kind, const GroupVector& f, const GroupVector& g) {
  if (kind == GroupOp::Neg) throw Error(ErrorKind::PreconditionViolated, "neg takes one operand");
  require_same_length(f, g);
  std::vector<Rational> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    switch (kind) {
      case GroupOp::Add: out[i] = f[i] + g[i]; break;
      case GroupOp::Meet: out[i] = std::min(f[i], g[i]); break;
      case GroupOp::Join: out[i] = std::max(f[i], g[i]); break;
      case GroupOp::Neg: break;
    }
  }
  return GroupVector(std::move(out));
}

GroupVector pointwise_op(GroupOp kind, const GroupVector& f) {
  if (kind != GroupOp::Neg) throw Error(ErrorKind::PreconditionViolated, "binary op given one operand");
  std::vector<Rational> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = -f[i];
  return GroupVector(std::move(out));
}

GroupVector scale(const Rational& q, const GroupVector& f) {
  std::vector<Rational> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = q * f[i];
  return GroupVector(std::move(out));
}

SubsetL std_valuation(const GroupVector& f) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].sign() >= 0) bits |= std::uint64_t{1} << i;
  return SubsetL(f.size(), bits);
}

SubsetL subset_op(SubsetOp kind, const SubsetL& c, const SubsetL& d) {
  require_same_width(c, d);
  switch (kind) {
    case SubsetOp::Meet: return SubsetL(c.width(), c.bits() & d.bits());
    case SubsetOp::Join: return SubsetL(c.width(), c.bits() | d.bits());
    case SubsetOp::Complement: break;
  }
  throw Error(ErrorKind::PreconditionViolated, "complement takes one operand");
}

SubsetL subset_op(SubsetOp kind, const SubsetL& c) {
  if (kind != SubsetOp::Complement) throw Error(ErrorKind::PreconditionViolated, "binary op given one operand");
  return SubsetL(c.width(), ~c.bits() & SubsetL::full_mask(c.width()));
}

bool below(const SubsetL& c, const SubsetL& d) {
  require_same_width(c, d);
  return (c.bits() & ~d.bits()) == 0;
}

SubsetL agreement_set(const GroupVector& f, const GroupVector& g) {
  require_same_length(f, g);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] == g[i]) bits |= std::uint64_t{1} << i;
  return SubsetL(f.size(), bits);
}

GroupVector patch(const SubsetL& c, const SubsetL& d, const GroupVector& f, const GroupVector& g) {
  require_same_length(f, g);
  require_same_width(c, d);
  if (c.width() != f.size()) throw Error(ErrorKind::WidthMismatch, "regions and vectors differ in size");
  if (!below(c & d, agreement_set(f, g)))
    throw Error(ErrorKind::PatchPreconditionViolated, "f and g disagree on the overlap of the regions");
  std::vector<Rational> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (c.contains(x))
      out[x] = f[x];
    else if (d.contains(x))
      out[x] = g[x];
  }
  return GroupVector(std::move(out));
}

std::pair<GroupVector, GroupVector> ac_split(const GroupVector& a, const GroupVector& b, const GroupVector& c) {
  require_same_length(a, b);
  require_same_length(a, c);
  if (!a.is_nonneg() || !b.is_nonneg() || !c.is_nonneg())
    throw Error(ErrorKind::SplitPreconditionViolated, "a, b, c must be >= 0");
  if (!meet(a, b).is_zero()) throw Error(ErrorKind::SplitPreconditionViolated, "a meet b must be 0");
  std::vector<Rational> f(a.size()), g(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (!a[x].is_zero())
      f[x] = c[x];
    else
      g[x] = c[x];
  }
  return {GroupVector(std::move(f)), GroupVector(std::move(g))};
}

GroupVector complement_witness(const GroupVector& a) {
  require_nonneg(a, "complement_witness input");
  std::vector<Rational> out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x].is_zero()) out[x] = 1;
  return GroupVector(std::move(out));
}

bool is_weak_order_unit(const GroupVector& f) {
  require_nonneg(f, "weak order unit candidate");
  return std::all_of(f.values().begin(), f.values().end(), [](const Rational& r) { return r.sign() > 0; });
}

std::pair<GroupVector, SubsetL> double_embed(const GroupVector& f, const SubsetL& c) {
  const std::size_t n = f.size();
  if (c.width() != n) throw Error(ErrorKind::WidthMismatch, "vector and subset differ in size");
  if (2 * n > SubsetL::kMaxWidth) throw Error(ErrorKind::ResourceLimit, "doubled ground set above 64 points");
  std::vector<Rational> out(2 * n);
  for (std::size_t x = 0; x < n; ++x) out[x] = out[x + n] = f[x];
  return {GroupVector(std::move(out)), SubsetL(2 * n, c.bits() | (c.bits() << n))};
}

}  // namespace dvlg
