#include "ffd/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "ffd/error.hpp"

namespace ffd {
namespace {

int words_for(int n) { return (n + 63) / 64; }

void check_site(int site, int n) {
  if (site < 1 || site > n) {
    fail(ErrorCode::argument, "site " + std::to_string(site) + " outside 1.." + std::to_string(n));
  }
}

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(int num_sites) : n_(num_sites) {
  if (num_sites < 0) fail(ErrorCode::argument, "negative site count");
  xs_.assign(words_for(num_sites), 0);
  zs_.assign(words_for(num_sites), 0);
}

PauliString PauliString::from_letters(std::string_view letters, int phase) {
  PauliString p(static_cast<int>(letters.size()));
  for (int m = 1; m <= p.n_; ++m) {
    switch (letters[m - 1]) {
      case 'I': case '.': break;
      case 'X': p.set_letter(m, Letter::X); break;
      case 'Y': p.set_letter(m, Letter::Y); break;
      case 'Z': p.set_letter(m, Letter::Z); break;
      default: fail(ErrorCode::argument, "bad Pauli letter '" + std::string(1, letters[m - 1]) + "'");
    }
  }
  p.set_phase(phase);
  return p;
}

PauliString PauliString::single(int num_sites, int site, Letter letter) {
  PauliString p(num_sites);
  p.set_letter(site, letter);
  return p;
}

PauliString PauliString::from_masks(int num_sites, std::uint64_t x, std::uint64_t z, int phase) {
  if (num_sites > 64) fail(ErrorCode::argument, "from_masks needs at most 64 sites");
  PauliString p(num_sites);
  if (num_sites > 0) {
    std::uint64_t keep = num_sites == 64 ? ~0ULL : ((1ULL << num_sites) - 1);
    p.xs_[0] = x & keep;
    p.zs_[0] = z & keep;
  }
  p.set_phase(phase);
  return p;
}

Letter PauliString::letter(int site) const {
  check_site(site, n_);
  int b = site - 1;
  unsigned xb = (xs_[b / 64] >> (b % 64)) & 1U;
  unsigned zb = (zs_[b / 64] >> (b % 64)) & 1U;
  return static_cast<Letter>(xb | (zb << 1));
}

void PauliString::set_letter(int site, Letter l) {
  check_site(site, n_);
  int b = site - 1;
  std::uint64_t bit = 1ULL << (b % 64);
  auto v = static_cast<unsigned>(l);
  if (v & 1U) xs_[b / 64] |= bit; else xs_[b / 64] &= ~bit;
  if (v & 2U) zs_[b / 64] |= bit; else zs_[b / 64] &= ~bit;
}

PauliString PauliString::with_phase(int p) const {
  PauliString out = *this;
  out.set_phase(p);
  return out;
}

cplx PauliString::phase_value() const { return kIPow[phase_]; }

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < xs_.size(); ++w)
    if (xs_[w] | zs_[w]) return false;
  return true;
}

int PauliString::weight() const {
  int c = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) c += std::popcount(xs_[w] | zs_[w]);
  return c;
}

int PauliString::lowest_site() const {
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    std::uint64_t v = xs_[w] | zs_[w];
    if (v) return static_cast<int>(w * 64 + std::countr_zero(v)) + 1;
  }
  return 0;
}

int PauliString::highest_site() const {
  for (std::size_t w = xs_.size(); w-- > 0;) {
    std::uint64_t v = xs_[w] | zs_[w];
    if (v) return static_cast<int>(w * 64 + 63 - std::countl_zero(v)) + 1;
  }
  return 0;
}

int PauliString::count_y() const {
  int c = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) c += std::popcount(xs_[w] & zs_[w]);
  return c;
}

bool PauliString::commutes_with(const PauliString& o) const {
  if (n_ != o.n_) fail(ErrorCode::argument, "size mismatch in commutation test");
  int parity = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w)
    parity ^= std::popcount((xs_[w] & o.zs_[w]) ^ (zs_[w] & o.xs_[w])) & 1;
  return parity == 0;
}

std::string PauliString::to_string() const {
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  std::string s = prefix[phase_];
  static const char letters[4] = {'I', 'X', 'Z', 'Y'};
  for (int m = 1; m <= n_; ++m) s.push_back(letters[static_cast<int>(letter(m))]);
  return s;
}

bool WordLess::operator()(const PauliString& a, const PauliString& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto& ax = a.x_words();
  const auto& bx = b.x_words();
  const auto& az = a.z_words();
  const auto& bz = b.z_words();
  for (std::size_t w = ax.size(); w-- > 0;) {
    if (ax[w] != bx[w]) return ax[w] < bx[w];
    if (az[w] != bz[w]) return az[w] < bz[w];
  }
  return false;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.n_ != q.n_) {
    fail(ErrorCode::argument, "size mismatch in multiply: " + std::to_string(p.n_) + " vs " + std::to_string(q.n_));
  }
  PauliString r(p.n_);
  int k = p.phase_ + q.phase_;
  for (std::size_t w = 0; w < p.xs_.size(); ++w) {
    r.xs_[w] = p.xs_[w] ^ q.xs_[w];
    r.zs_[w] = p.zs_[w] ^ q.zs_[w];
    k += std::popcount(p.xs_[w] & p.zs_[w]) + std::popcount(q.xs_[w] & q.zs_[w]) +
         2 * std::popcount(p.zs_[w] & q.xs_[w]) - std::popcount(r.xs_[w] & r.zs_[w]);
  }
  r.set_phase(k);
  return r;
}

PauliString make_h(int m, int M) {
  if (m < 1 || m > M) {
    fail(ErrorCode::argument, "make_h: m=" + std::to_string(m) + " outside 1.." + std::to_string(M));
  }
  PauliString h(M);
  h.set_letter(m, Letter::X);
  if (m - 1 >= 1) h.set_letter(m - 1, Letter::Z);
  if (m - 2 >= 1) h.set_letter(m - 2, Letter::Z);
  return h;
}

PauliString make_chi(Family family, int M) {
  if (!family_accepts(family, M)) {
    fail(ErrorCode::argument, "make_chi: M=" + std::to_string(M) + " incompatible with family " +
                                  std::string(to_string(family)));
  }
  PauliString chi(M);
  chi.set_letter(M, Letter::Z);
  if (family == Family::II) chi.set_letter(M - 1, Letter::Z);
  return chi;
}

OperatorSum::OperatorSum(const PauliString& p, cplx amp) : n_(p.size()) {
  add(p, amp);
  prune();
}

OperatorSum OperatorSum::identity(int num_sites, cplx amp) {
  return OperatorSum(PauliString(num_sites), amp);
}

void OperatorSum::check_size(const OperatorSum& o) const {
  if (n_ != o.n_) {
    fail(ErrorCode::argument, "size mismatch in operator sum: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
  }
}

void OperatorSum::add(const PauliString& p, cplx amp) {
  if (p.size() != n_) fail(ErrorCode::argument, "size mismatch adding Pauli string");
  cplx a = amp * p.phase_value();
  auto [it, inserted] = terms_.try_emplace(p.with_phase(0), a);
  if (!inserted) it->second += a;
}

cplx OperatorSum::coefficient(const PauliString& word) const {
  auto it = terms_.find(word);
  return it == terms_.end() ? cplx{} : it->second * word.phase_value();
}

void OperatorSum::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < prune_threshold; });
}

double OperatorSum::norm1() const {
  double s = 0;
  for (const auto& [p, a] : terms_) s += std::abs(a);
  return s;
}

OperatorSum OperatorSum::adjoint() const {
  OperatorSum r(n_);
  for (const auto& [p, a] : terms_) r.terms_.emplace(p, std::conj(a));
  return r;
}

OperatorSum OperatorSum::transpose() const {
  OperatorSum r(n_);
  for (const auto& [p, a] : terms_) r.terms_.emplace(p, (p.count_y() % 2) ? -a : a);
  return r;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
  check_size(o);
  for (const auto& [p, a] : o.terms_) add(p, a);
  prune();
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& o) {
  check_size(o);
  for (const auto& [p, a] : o.terms_) add(p, -a);
  prune();
  return *this;
}

OperatorSum& OperatorSum::operator*=(cplx s) {
  for (auto& [p, a] : terms_) a *= s;
  prune();
  return *this;
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  a.check_size(b);
  OperatorSum r(a.n_);
  for (const auto& [p, x] : a.terms_)
    for (const auto& [q, y] : b.terms_) r.add(multiply(p, q), x * y);
  r.prune();
  return r;
}

std::string OperatorSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [p, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i)" << p.to_string().substr(1);
  }
  return os.str();
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) { return a * b - b * a; }
OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b) { return a * b + b * a; }

OperatorSum make_gate(int m, double phi, int M) {
  OperatorSum g = OperatorSum::identity(M, std::cos(phi / 2));
  g.add(make_h(m, M), cplx(0, std::sin(phi / 2)));
  g.prune();
  return g;
}

ProductState::ProductState(std::vector<Site> sites) : sites_(std::move(sites)) {
  for (std::size_t m = 0; m < sites_.size(); ++m) {
    double n = std::norm(sites_[m][0]) + std::norm(sites_[m][1]);
    if (!(std::abs(n - 1.0) <= norm_tolerance)) {
      fail(ErrorCode::argument, "product state site " + std::to_string(m + 1) + " is not normalized");
    }
  }
}

ProductState ProductState::tilted(int M, double theta) {
  return ProductState(std::vector<Site>(M, Site{std::cos(theta), std::sin(theta)}));
}

ProductState ProductState::zeros(int M) { return ProductState(std::vector<Site>(M, Site{1.0, 0.0})); }

ProductState ProductState::plus(int M) {
  double r = std::sqrt(0.5);
  return ProductState(std::vector<Site>(M, Site{r, r}));
}

cplx ProductState::letter_expectation(int m, Letter l) const {
  const Site& s = sites_[m - 1];
  switch (l) {
    case Letter::I: return std::norm(s[0]) + std::norm(s[1]);
    case Letter::X: return 2.0 * std::real(std::conj(s[0]) * s[1]);
    case Letter::Y: return 2.0 * std::imag(std::conj(s[0]) * s[1]);
    case Letter::Z: return std::norm(s[0]) - std::norm(s[1]);
  }
  return 0.0;
}

std::vector<cplx> ProductState::to_vector() const {
  int n = size();
  if (n > 30) fail(ErrorCode::resource, "dense product state limited to 30 sites");
  std::vector<cplx> v(std::size_t{1} << n, 1.0);
  for (std::size_t j = 0; j < v.size(); ++j)
    for (int m = 0; m < n; ++m) v[j] *= sites_[m][(j >> m) & 1U];
  return v;
}

cplx expect_product(const PauliString& p, const ProductState& psi) {
  if (p.size() != psi.size()) fail(ErrorCode::argument, "size mismatch in expect_product");
  cplx r = p.phase_value();
  for (int m = 1; m <= p.size(); ++m) {
    Letter l = p.letter(m);
    if (l != Letter::I) r *= psi.letter_expectation(m, l);
  }
  return r;
}

cplx expect_product(const OperatorSum& op, const ProductState& psi) {
  if (op.size() != psi.size()) fail(ErrorCode::argument, "size mismatch in expect_product");
  cplx r = 0;
  for (const auto& [p, a] : op.terms()) r += a * expect_product(p, psi);
  return r;
}

void apply_add(const PauliString& p, std::span<const cplx> in, std::span<cplx> out, cplx scale) {
  if (p.size() > 30) fail(ErrorCode::resource, "dense Pauli action limited to 30 sites");
  std::size_t dim = std::size_t{1} << p.size();
  if (in.size() != dim || out.size() != dim) fail(ErrorCode::argument, "state dimension mismatch");
  std::uint64_t x = p.x_mask();
  std::uint64_t z = p.z_mask();
  cplx s = scale * kIPow[(p.phase() + std::popcount(x & z)) % 4];
  for (std::size_t j = 0; j < dim; ++j) {
    cplx a = in[j] * s;
    out[j ^ x] += (std::popcount(z & j) & 1) ? -a : a;
  }
}

void apply_add(const OperatorSum& op, std::span<const cplx> in, std::span<cplx> out) {
  for (const auto& [p, a] : op.terms()) apply_add(p, in, out, a);
}

}  // namespace ffd
