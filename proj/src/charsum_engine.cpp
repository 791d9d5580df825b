#include "gml/charsum_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace gml {

CharSumEngine::CharSumEngine(const PrimeContext& ctx) : ctx_(&ctx) {
  const std::int64_t p = ctx.p;
  const auto& L = ctx.legendre;
  const auto& sq = ctx.squares;
  kernel_.assign(static_cast<std::size_t>(p), 0);

  const std::int64_t half = (p - 1) / 2;
  // rho(b^2 - 1) reused across every x
  std::vector<std::int64_t> lb1(static_cast<std::size_t>(half + 1));
  for (std::int64_t b = 1; b <= half; ++b)
    lb1[static_cast<std::size_t>(b)] = L[static_cast<std::size_t>((sq[static_cast<std::size_t>(b)] + p - 1) % p)];

  // b runs over nonzero residues; b and p-b contribute equally, as do
  // x and p-x.
  for (std::int64_t x = 1; x <= half; ++x) {
    const std::int64_t x2 = sq[static_cast<std::size_t>(x)];
    std::int64_t acc = 0;
    for (std::int64_t b = 1; b <= half; ++b) {
      std::int64_t d = sq[static_cast<std::size_t>(b)] - x2;
      if (d < 0) d += p;
      acc += 2 * L[static_cast<std::size_t>(d)] * lb1[static_cast<std::size_t>(b)];
    }
    kernel_[static_cast<std::size_t>(x)] = acc;
    kernel_[static_cast<std::size_t>(p - x)] = acc;
  }
}

std::int64_t CharSumEngine::reduce(std::int64_t a) const {
  std::int64_t r = a % ctx_->p;
  if (r < 0) r += ctx_->p;
  return r;
}

std::int64_t CharSumEngine::kernel_at(std::int64_t x) const {
  std::int64_t r = reduce(x);
  if (r == 0) throw std::invalid_argument("kernel_at: x must be nonzero mod p");
  return kernel_[static_cast<std::size_t>(r)];
}

std::int64_t CharSumEngine::sum_N() const {
  const std::int64_t p = ctx_->p;
  const auto& L = ctx_->legendre;
  const auto& sq = ctx_->squares;
  std::int64_t acc = 0;
  for (std::int64_t a = 2; a <= p - 2; ++a) {
    acc += L[static_cast<std::size_t>((sq[static_cast<std::size_t>(a)] + p - 1) % p)] *
           kernel_[static_cast<std::size_t>(a)];
  }
  return L[static_cast<std::size_t>(p - 1)] * acc;
}

std::int64_t CharSumEngine::sum_T() const {
  const std::int64_t p = ctx_->p;
  std::int64_t acc = 0;
  for (std::int64_t a = 2; a <= p - 2; ++a) {
    const std::int64_t k = kernel_[static_cast<std::size_t>(a)];
    acc += k * k;
  }
  return acc;
}

std::int64_t CharSumEngine::triple_S(std::int64_t a) const {
  const std::int64_t p = ctx_->p;
  const std::int64_t am = reduce(a);
  if (am == 0) throw std::invalid_argument("triple_S: a must be nonzero mod p");
  std::int64_t acc = 0;
  for (std::int64_t c = 1; c < p; ++c)
    acc += kernel_[static_cast<std::size_t>(am * c % p)] * kernel_[static_cast<std::size_t>(c)];
  return acc;
}

std::int64_t CharSumEngine::triple_full() const {
  const std::int64_t p = ctx_->p;
  std::int64_t acc = 0;
  for (std::int64_t c = 1; c < p; ++c) {
    const std::int64_t k = kernel_[static_cast<std::size_t>(c)];
    acc += k * k;
  }
  return acc;
}

std::int64_t CharSumEngine::sum_R(std::int64_t a) const {
  const std::int64_t p = ctx_->p;
  const std::int64_t am = reduce(a);
  if (am == 0) throw std::invalid_argument("sum_R: a must be nonzero mod p");
  const auto& L = ctx_->legendre;
  const auto& sq = ctx_->squares;
  std::int64_t acc = 0;
  for (std::int64_t c = 1; c < p; ++c) {
    acc += L[static_cast<std::size_t>((sq[static_cast<std::size_t>(c)] + p - 1) % p)] *
           kernel_[static_cast<std::size_t>(am * c % p)];
  }
  return acc;
}

void CharSumEngine::build_phi() const {
  if (!phi_.empty()) return;
  const std::int64_t p = ctx_->p;
  const auto& L = ctx_->legendre;
  phi_.assign(static_cast<std::size_t>(p), 0);
  // rho(b - 1) rho(b) reused across every t
  std::vector<std::int64_t> lb(static_cast<std::size_t>(p));
  for (std::int64_t b = 0; b < p; ++b) {
    lb[static_cast<std::size_t>(b)] = L[static_cast<std::size_t>((b + p - 1) % p)] *
                                      L[static_cast<std::size_t>(b)];
  }
  for (std::int64_t t = 0; t < p; ++t) {
    std::int64_t acc = 0;
    for (std::int64_t b = 0; b < p; ++b) {
      const std::int64_t w = lb[static_cast<std::size_t>(b)];
      if (w != 0) {
        std::int64_t d = b - t;
        if (d < 0) d += p;
        acc += w * L[static_cast<std::size_t>(d)];
      }
    }
    phi_[static_cast<std::size_t>(t)] = acc;
  }
}

std::int64_t CharSumEngine::phi(std::int64_t t) const {
  build_phi();
  return phi_[static_cast<std::size_t>(reduce(t))];
}

std::int64_t CharSumEngine::diag_s(std::int64_t a) const {
  build_phi();
  const std::int64_t p = ctx_->p;
  const auto& L = ctx_->legendre;
  const std::int64_t a2 = ctx_->squares[static_cast<std::size_t>(reduce(a))];
  std::int64_t acc = 0;
  for (std::int64_t c = 1; c < p; ++c) {
    acc += L[static_cast<std::size_t>(c)] * phi_[static_cast<std::size_t>(a2 * c % p)] *
           phi_[static_cast<std::size_t>(c)];
  }
  return acc;
}

std::int64_t CharSumEngine::diag_t() const {
  build_phi();
  const std::int64_t p = ctx_->p;
  const auto& L = ctx_->legendre;
  std::int64_t acc = 0;
  for (std::int64_t c = 1; c < p; ++c) {
    const std::int64_t f = phi_[static_cast<std::size_t>(c)];
    acc += L[static_cast<std::size_t>(c)] * f * f;
  }
  return acc;
}

std::int64_t CharSumEngine::diag_r(std::int64_t a) const {
  build_phi();
  const std::int64_t p = ctx_->p;
  const auto& L = ctx_->legendre;
  const auto& sq = ctx_->squares;
  const std::int64_t a2 = sq[static_cast<std::size_t>(reduce(a))];
  std::int64_t acc = 0;
  for (std::int64_t c = 1; c < p; ++c) {
    std::int64_t d = sq[static_cast<std::size_t>(c)] - c;
    if (d < 0) d += p;
    acc += L[static_cast<std::size_t>(d)] * phi_[static_cast<std::size_t>(a2 * c % p)];
  }
  return acc;
}

double CharSumEngine::weil_max_ratio() const {
  const std::int64_t p = ctx_->p;
  std::int64_t best = 0;
  for (std::int64_t x = 2; x <= p - 2; ++x)
    best = std::max<std::int64_t>(best, std::llabs(kernel_[static_cast<std::size_t>(x)]));
  return static_cast<double>(best) / (3.0 * std::sqrt(static_cast<double>(p)));
}

CharSumRecord CharSumEngine::record(const std::vector<std::int64_t>& a_values,
                                    bool include_phi) const {
  CharSumRecord rec;
  rec.p = ctx_->p;
  rec.kernel.assign(kernel_.begin() + 1, kernel_.end());
  rec.N = sum_N();
  rec.T = sum_T();
  rec.tripleFull = triple_full();
  for (std::int64_t a : a_values) {
    rec.S[a] = triple_S(a);
    rec.R[a] = sum_R(a);
  }
  if (include_phi) {
    build_phi();
    rec.phi = phi_;
    for (std::int64_t a : a_values) {
      rec.diagS[a] = diag_s(a);
      rec.diagR[a] = diag_r(a);
    }
    rec.diagT = diag_t();
  }
  return rec;
}

}  // namespace gml
