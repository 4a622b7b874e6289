#include "gaborheat/tfa.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gaborheat/error.hpp"
#include "gaborheat/parallel.hpp"

namespace gaborheat {

double norm(PhasePoint z) { return std::hypot(z.x, z.xi); }

PhaseLattice::PhaseLattice(const Grid& grid, double alpha, double beta, double x_extent, double xi_extent,
                           double max_radius)
    : grid_(grid) {
  require(grid.dim() == 1, "phase lattices are implemented for d = 1");
  require(alpha > 0.0 && beta > 0.0, "lattice steps must be positive");
  const int n = grid.samples();
  x_stride_ = std::max(1, int(std::lround(alpha / grid.spacing())));
  xi_stride_ = std::max(1, int(std::lround(beta / grid.frequency_spacing())));
  require(this->alpha() * this->beta() <= 2.0 * kPi + 1e-12, "lattice violates alpha * beta <= 2 pi");
  const int max_offset = n / 2 - 1;
  x_half_ = std::min(int(std::floor(x_extent / this->alpha() + 1e-9)), max_offset / x_stride_);
  xi_half_ = std::min(int(std::floor(xi_extent / this->beta() + 1e-9)), max_offset / xi_stride_);
  require(x_half_ >= 0 && xi_half_ >= 0, "lattice extents must be nonnegative");
  lookup_.assign(std::size_t(2 * x_half_ + 1) * (2 * xi_half_ + 1), -1);
  for (int ix = -x_half_; ix <= x_half_; ++ix) {
    for (int ixi = -xi_half_; ixi <= xi_half_; ++ixi) {
      const double r = std::hypot(ix * this->alpha(), ixi * this->beta());
      if (r > max_radius + 1e-12) continue;
      lookup_[std::size_t(ix + x_half_) * (2 * xi_half_ + 1) + (ixi + xi_half_)] = long(nodes_.size());
      nodes_.push_back({ix, ixi});
    }
  }
  require(!nodes_.empty(), "lattice has no points");
}

PhaseLattice PhaseLattice::covering(const Grid& grid, double alpha, double beta) {
  return PhaseLattice(grid, alpha, beta, 0.5 * grid.length(), grid.nyquist());
}

PhaseLattice PhaseLattice::interior(const Grid& grid, double alpha, double beta) {
  const double r = 0.25 * grid.length();
  return PhaseLattice(grid, alpha, beta, r, r, r);
}

PhasePoint PhaseLattice::point(std::size_t i) const noexcept {
  return {nodes_[i].ix * alpha(), nodes_[i].ixi * beta()};
}

long PhaseLattice::find(int ix, int ixi) const noexcept {
  if (std::abs(ix) > x_half_ || std::abs(ixi) > xi_half_) return -1;
  return lookup_[std::size_t(ix + x_half_) * (2 * xi_half_ + 1) + (ixi + xi_half_)];
}

GridFunction translate(const GridFunction& f, double x) {
  const Grid& g = f.grid();
  require(g.dim() == 1, "translate is implemented for d = 1");
  const long n = g.samples();
  const long s = g.nearest_offset(x);
  GridFunction out(g);
  for (long j = 0; j < n; ++j) out[std::size_t(j)] = f[std::size_t(((j - s) % n + n) % n)];
  return out;
}

GridFunction modulate(const GridFunction& f, double xi) {
  const Grid& g = f.grid();
  require(g.dim() == 1, "modulate is implemented for d = 1");
  GridFunction out = f;
  for (int j = 0; j < g.samples(); ++j) out[j] *= std::polar(1.0, xi * g.x(j));
  return out;
}

ShiftOutcome phase_shift_recorded(const GridFunction& f, PhasePoint z) {
  const double applied_x = double(f.grid().nearest_offset(z.x)) * f.grid().spacing();
  return {modulate(translate(f, z.x), z.xi), {applied_x, z.xi}};
}

GridFunction phase_shift(const GridFunction& f, PhasePoint z) { return phase_shift_recorded(f, z).value; }

GridFunction gaussian_window(const Grid& grid) {
  const double c = std::pow(kPi, -0.25);
  return sample(grid, [c](double y) { return cplx(c * std::exp(-0.5 * y * y)); });
}

PhaseSpaceField stft(const GridFunction& f, const GridFunction& g, const PhaseLattice& lattice) {
  require(f.grid() == g.grid() && f.grid() == lattice.grid(), "grid mismatch");
  require(g.values().cwiseAbs().maxCoeff() > 0.0, "invalid window: g vanishes identically");
  const Grid& grid = f.grid();
  const int n = grid.samples();

  std::map<int, std::vector<std::size_t>> by_x;
  for (std::size_t i = 0; i < lattice.size(); ++i) by_x[lattice.nodes()[i].ix].push_back(i);
  std::vector<std::pair<int, const std::vector<std::size_t>*>> rows;
  for (const auto& [ix, members] : by_x) rows.emplace_back(ix, &members);

  CMatrix values(Eigen::Index(lattice.size()), 1);
  parallel_for(rows.size(), [&](std::size_t r) {
    const int s = rows[r].first * lattice.x_stride();
    GridFunction prod(grid);
    for (int j = 0; j < n; ++j) prod[j] = f[j] * std::conj(g[std::size_t(((j - s) % n + n) % n)]);
    const GridFunction spec = dft(prod);
    for (std::size_t i : *rows[r].second) {
      const int k = lattice.nodes()[i].ixi * lattice.xi_stride() + n / 2;
      values(Eigen::Index(i), 0) = spec[std::size_t(k)];
    }
  });
  return {lattice, std::move(values)};
}

double partition_bump(double t) {
  const double a = std::abs(t);
  if (a >= 1.0) return 0.0;
  return 1.0 - a * a * (3.0 - 2.0 * a);
}

namespace {

double lp_norm(const CVector& v, double p, double weight) {
  if (std::isinf(p)) return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]), p);
  return std::pow(weight * acc, 1.0 / p);
}

void check_spec(const ModulationNormSpec& spec) {
  require(spec.p >= 1.0 && spec.q >= 1.0, "modulation norm requires p, q >= 1");
  require(spec.s >= 0.0, "modulation norm requires s >= 0");
}

double combine_outer(const std::vector<double>& terms, double q, double weight) {
  if (std::isinf(q)) return terms.empty() ? 0.0 : *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, q);
  return std::pow(weight * acc, 1.0 / q);
}

}  // namespace

double modulation_norm_boxes(const GridFunction& f, const ModulationNormSpec& spec) {
  check_spec(spec);
  const Grid& grid = f.grid();
  require(grid.dim() == 1, "modulation norms are implemented for d = 1");
  const int n = grid.samples();
  const GridFunction fh = dft(f);
  const double h = grid.spacing();
  const int kmax = int(std::ceil(grid.nyquist())) + 1;

  std::vector<double> terms(std::size_t(2 * kmax + 1), 0.0);
  parallel_for(terms.size(), [&](std::size_t idx) {
    const int k = int(idx) - kmax;
    GridFunction band(grid);
    bool any = false;
    for (int m = 0; m < n; ++m) {
      const double w = partition_bump(grid.xi(m) - k);
      if (w != 0.0 && fh[m] != 0.0) {
        band[m] = w * fh[m];
        any = true;
      }
    }
    if (!any) return;
    const double local = lp_norm(inverse_dft(band).values(), spec.p, h);
    terms[idx] = std::pow(1.0 + double(k) * k, 0.5 * spec.s) * local;
  });
  return combine_outer(terms, spec.q, 1.0);
}

double modulation_norm_stft(const GridFunction& f, const GridFunction& g, const ModulationNormSpec& spec,
                            const PhaseLattice& lattice) {
  check_spec(spec);
  const PhaseSpaceField v = stft(f, g, lattice);
  std::map<int, std::vector<std::size_t>> by_xi;
  for (std::size_t i = 0; i < lattice.size(); ++i) by_xi[lattice.nodes()[i].ixi].push_back(i);

  std::vector<double> terms;
  terms.reserve(by_xi.size());
  for (const auto& [ixi, members] : by_xi) {
    const double xi = ixi * lattice.beta();
    CVector row(Eigen::Index(members.size()));
    for (std::size_t r = 0; r < members.size(); ++r) row[Eigen::Index(r)] = v.values(Eigen::Index(members[r]), 0);
    terms.push_back(std::pow(1.0 + xi * xi, 0.5 * spec.s) * lp_norm(row, spec.p, lattice.alpha()));
  }
  return combine_outer(terms, spec.q, lattice.beta());
}

double modulation_norm_stft(const GridFunction& f, const GridFunction& g, const ModulationNormSpec& spec) {
  return modulation_norm_stft(f, g, spec, PhaseLattice::covering(f.grid()));
}

}  // namespace gaborheat
