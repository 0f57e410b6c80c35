#include "scalevar/function_handle.hpp"

#include <algorithm>
#include <sstream>

#include "scalevar/error.hpp"

namespace scalevar {

namespace {

std::vector<double> merge_breakpoints(const std::vector<double>& a, const std::vector<double>& b,
                                      const Interval& domain) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  for (double x : a)
    if (domain.contains(x)) out.push_back(x);
  for (double x : b)
    if (domain.contains(x)) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace

FunctionHandle::FunctionHandle(Fn fn, Interval domain, std::vector<double> breakpoints)
    : fn_(std::make_shared<const Fn>(std::move(fn))), domain_(domain) {
  if (!(domain.lo <= domain.hi)) {
    throw Error(ErrorKind::invalid_argument, "function handle domain is empty");
  }
  breakpoints_ = merge_breakpoints(breakpoints, {}, domain_);
}

Complex FunctionHandle::operator()(double x) const {
  if (!fn_) throw Error(ErrorKind::invalid_argument, "evaluating an empty function handle");
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "evaluation at x = " << x << " outside domain [" << domain_.lo << ", " << domain_.hi
        << "]";
    throw Error(ErrorKind::out_of_range, msg.str());
  }
  return (*fn_)(x);
}

FunctionHandle FunctionHandle::restricted(Interval domain) const {
  FunctionHandle out = *this;
  out.domain_ = intersect(domain_, domain);
  if (!(out.domain_.lo <= out.domain_.hi)) {
    throw Error(ErrorKind::invalid_argument, "restricted domain is empty");
  }
  out.breakpoints_ = merge_breakpoints(breakpoints_, {}, out.domain_);
  return out;
}

FunctionHandle operator+(const FunctionHandle& f, const FunctionHandle& g) {
  const Interval dom = intersect(f.domain(), g.domain());
  return FunctionHandle([f, g](double x) { return f(x) + g(x); }, dom,
                        merge_breakpoints(f.breakpoints(), g.breakpoints(), dom));
}

FunctionHandle operator*(const FunctionHandle& f, const FunctionHandle& g) {
  const Interval dom = intersect(f.domain(), g.domain());
  return FunctionHandle([f, g](double x) { return f(x) * g(x); }, dom,
                        merge_breakpoints(f.breakpoints(), g.breakpoints(), dom));
}

FunctionHandle operator*(Complex alpha, const FunctionHandle& f) {
  return FunctionHandle([alpha, f](double x) { return alpha * f(x); }, f.domain(),
                        f.breakpoints());
}

}  // namespace scalevar
