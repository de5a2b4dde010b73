#include "voxelvol/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxelvol/parallel.hpp"

namespace voxelvol {

double support_h(const std::vector<Vec3>& S, const Vec3& n) {
  if (S.empty()) throw std::invalid_argument("support function of empty set");
  double h = dot(S[0], n);
  for (std::size_t i = 1; i < S.size(); ++i) h = std::max(h, dot(S[i], n));
  return h;
}

bool delta_indicator(const std::vector<Vec3>& B, const std::vector<Vec3>& W,
                     const Vec3& n) {
  if (B.empty() || W.empty()) throw std::invalid_argument("delta needs non-empty B and W");
  double hb = dot(B[0], n);
  for (std::size_t i = 1; i < B.size(); ++i) hb = std::max(hb, dot(B[i], n));
  double lw = dot(W[0], n);
  for (std::size_t i = 1; i < W.size(); ++i) lw = std::min(lw, dot(W[i], n));
  return hb < lw;
}

double first_order_density(const std::vector<Vec3>& B, const std::vector<Vec3>& W,
                           const Vec3& n) {
  double hb = dot(B[0], n);
  for (std::size_t i = 1; i < B.size(); ++i) hb = std::max(hb, dot(B[i], n));
  double lw = dot(W[0], n);
  for (std::size_t i = 1; i < W.size(); ++i) lw = std::min(lw, dot(W[i], n));
  return std::max(0.0, lw - hb);
}

SupportPoint support_point_plus(const std::vector<Vec3>& S, const Vec3& n, double tie_eps) {
  SupportPoint sp;
  double best = -1e300, second = -1e300;
  for (std::size_t i = 0; i < S.size(); ++i) {
    double v = dot(S[i], n);
    if (v > best) {
      second = best;
      best = v;
      sp.p = S[i];
      sp.index = static_cast<int>(i);
    } else if (v > second) {
      second = v;
    }
  }
  if (S.size() > 1 && best - second <= tie_eps) {
    sp.degenerate = true;
    sp.p = {0, 0, 0};
    sp.index = -1;
  }
  return sp;
}

SupportPoint support_point_minus(const std::vector<Vec3>& S, const Vec3& n, double tie_eps) {
  SupportPoint sp = support_point_plus(S, -n, tie_eps);
  return sp;
}

ConfigSets config_sets(std::uint32_t mask, int dim) {
  return {black_vertices(mask, dim), white_vertices(mask, dim)};
}

namespace {

// Selector data that is constant on a stratum interior.
struct Selectors {
  bool delta = false;
  Vec3 bp{0, 0, 0}, wm{0, 0, 0};  // argmax over B, argmin over W
  double bp2 = 0.0, wm2 = 0.0;
};

Selectors stratum_selectors(const ConfigSets& cs, const Vec3& n) {
  Selectors s;
  double hb = -1e300;
  for (const Vec3& b : cs.black) {
    double v = dot(b, n);
    if (v > hb) {
      hb = v;
      s.bp = b;
    }
  }
  double lw = 1e300;
  for (const Vec3& w : cs.white) {
    double v = dot(w, n);
    if (v < lw) {
      lw = v;
      s.wm = w;
    }
  }
  s.delta = hb < lw;
  s.bp2 = norm2(s.bp);
  s.wm2 = norm2(s.wm);
  return s;
}

// Probability-measure expectation of a per-stratum smooth integrand over the
// sphere (d=3) or circle (d=2). `make` receives the selectors of the stratum
// and returns the pointwise function of n, or nullptr to skip the stratum.
using PointFn = std::function<double(const Vec3&)>;
using StratumFn = std::function<PointFn(const Selectors&)>;

double sphere_expectation(const ConfigSets& cs, int dim, const StratumFn& make,
                          double tol) {
  double sum = 0.0;
  if (dim == 3) {
    const auto& tris = cube_sphere_triangles();
    double per_tol = tol * 4.0 * kPi / static_cast<double>(tris.size());
    for (const auto& ct : tris) {
      Vec3 centroid = normalized(ct.tri.a + ct.tri.b + ct.tri.c);
      PointFn f = make(stratum_selectors(cs, centroid));
      if (!f) continue;
      sum += integrate_spherical_triangle_adaptive(ct.tri, f, per_tol).value;
    }
    return sum / (4.0 * kPi);
  }
  const auto& arcs = cube_circle_arcs();
  double per_tol = tol * 2.0 * kPi / static_cast<double>(arcs.size());
  for (const auto& arc : arcs) {
    double mid = 0.5 * (arc.first + arc.second);
    Vec3 nm{std::cos(mid), std::sin(mid), 0.0};
    PointFn f = make(stratum_selectors(cs, nm));
    if (!f) continue;
    sum += integrate_segment_adaptive(
               [&f](double th) {
                 return f(Vec3{std::cos(th), std::sin(th), 0.0});
               },
               arc.first, arc.second, per_tol)
               .value;
  }
  return sum / (2.0 * kPi);
}

bool trivial_mask(std::uint32_t mask, int dim) {
  return mask == 0 || mask == num_configurations(dim) - 1;
}

}  // namespace

double psi_bar(const ClassPartition& part, int class_id, double tol) {
  const ClassInfo& cls = part.classes.at(class_id);
  double sum = 0.0;
  for (std::uint32_t l : cls.members) {
    if (trivial_mask(l, part.dim)) continue;
    ConfigSets cs = config_sets(l, part.dim);
    sum += sphere_expectation(
        cs, part.dim,
        [](const Selectors& s) -> PointFn {
          if (!s.delta) return nullptr;
          Vec3 v = s.wm - s.bp;
          return [v](const Vec3& n) { return dot(v, n); };
        },
        tol / cls.members.size());
  }
  return 2.0 * sum;
}

double mu_bar(const ClassPartition& part, int class_id, double tol) {
  const ClassInfo& cls = part.classes.at(class_id);
  int d = part.dim;
  double sum = 0.0;
  for (std::uint32_t l : cls.members) {
    if (trivial_mask(l, d)) continue;
    ConfigSets cs = config_sets(l, d);
    sum += sphere_expectation(
        cs, d,
        [](const Selectors& s) -> PointFn {
          if (!s.delta) return nullptr;
          Vec3 bp = s.bp, wm = s.wm;
          return [bp, wm](const Vec3& n) {
            double hb = dot(bp, n), hw = dot(wm, n);
            return hb * hb - hw * hw;
          };
        },
        tol / cls.members.size());
  }
  return d * kPi / (d - 1) * sum;
}

double mu_l(std::uint32_t mask, int dim, double tol) {
  if (trivial_mask(mask, dim)) return 0.0;
  ConfigSets cs = config_sets(mask, dim);
  double e = sphere_expectation(
      cs, dim,
      [dim](const Selectors& s) -> PointFn {
        if (!s.delta) return nullptr;
        Vec3 bp = s.bp, wm = s.wm;
        double c = s.bp2 - s.wm2;
        return [bp, wm, c, dim](const Vec3& n) {
          double hb = dot(bp, n), hw = dot(wm, n);
          return dim * (hb * hb - hw * hw) - c;
        };
      },
      tol);
  return kPi / (dim - 1) * e;
}

namespace {

// Patch traversal shared by phi_bar and lambda: calls `on_stratum` with the
// constant-selector data and an integrator for smooth pointwise functions of
// the surface point (already carrying the surface measure).
struct PatchStratum {
  Selectors sel;
  // Integrates f(surface point) against the boundary measure of the stratum.
  std::function<double(const std::function<double(const SurfacePoint&)>&, double tol)>
      integrate;
  // Geometry needed by the {h=0} detection on cylinders/flats.
  enum class Kind { SphereTri, SphereArc, Cylinder, Flat } kind;
  const BoundaryPatch* patch = nullptr;
  std::pair<double, double> arc{0, 0};
};

void for_each_stratum(const Phantom& ph, const ConfigSets& cs,
                      const std::function<void(const PatchStratum&)>& visit) {
  std::vector<BoundaryPatch> patches = boundary_patches(ph);
  for (const auto& p : patches) {
    if (p.kind == BoundaryPatch::Kind::Sphere) {
      if (p.dim == 3) {
        for (const auto& tri : sphere_region_triangles(p)) {
          PatchStratum st;
          st.kind = PatchStratum::Kind::SphereTri;
          st.patch = &p;
          Vec3 centroid = normalized(tri.a + tri.b + tri.c);
          st.sel = stratum_selectors(cs, centroid);
          st.integrate = [&p, tri](const std::function<double(const SurfacePoint&)>& f,
                                   double tol) {
            return integrate_spherical_triangle_adaptive(
                       tri,
                       [&](const Vec3& n) { return f(sphere_point(p, n)) * p.r * p.r; },
                       tol)
                .value;
          };
          visit(st);
        }
      } else {
        for (const auto& arc : sphere_region_arcs(p)) {
          PatchStratum st;
          st.kind = PatchStratum::Kind::SphereArc;
          st.patch = &p;
          st.arc = arc;
          double mid = 0.5 * (arc.first + arc.second);
          st.sel = stratum_selectors(cs, Vec3{std::cos(mid), std::sin(mid), 0.0});
          st.integrate = [&p, arc](const std::function<double(const SurfacePoint&)>& f,
                                   double tol) {
            return integrate_segment_adaptive(
                       [&](double th) {
                         Vec3 n{std::cos(th), std::sin(th), 0.0};
                         return f(sphere_point(p, n)) * p.r;
                       },
                       arc.first, arc.second, tol)
                .value;
          };
          visit(st);
        }
      }
    } else if (p.kind == BoundaryPatch::Kind::Cylinder) {
      for (const auto& arc : cylinder_strata(p)) {
        PatchStratum st;
        st.kind = PatchStratum::Kind::Cylinder;
        st.patch = &p;
        st.arc = arc;
        double mid = 0.5 * (arc.first + arc.second);
        Vec3 nm = std::cos(mid) * p.frame_e + std::sin(mid) * p.frame_f;
        st.sel = stratum_selectors(cs, nm);
        st.integrate = [&p, arc](const std::function<double(const SurfacePoint&)>& f,
                                 double tol) {
          // Integrands on our cylinders do not vary along the axis; still
          // integrate s with a fixed rule for generality.
          return integrate_segment_adaptive(
                     [&](double th) {
                       return integrate_segment(
                           [&](double s) { return f(cylinder_point(p, s, th)) * p.r; },
                           0.0, p.length, 16);
                     },
                     arc.first, arc.second, tol)
              .value;
        };
        visit(st);
      }
    } else {
      PatchStratum st;
      st.kind = PatchStratum::Kind::Flat;
      st.patch = &p;
      st.sel = stratum_selectors(cs, p.normal0);
      st.integrate = [&p](const std::function<double(const SurfacePoint&)>& f, double tol) {
        if (p.dim == 2)
          return integrate_segment_adaptive([&](double a) { return f(flat_point(p, a)); },
                                            0.0, p.ext1, tol)
              .value;
        return integrate_segment_adaptive(
                   [&](double a) {
                     return integrate_segment(
                         [&](double b) { return f(flat_point(p, a, b)); }, 0.0, p.ext2,
                         16);
                   },
                   0.0, p.ext1, tol)
            .value;
      };
      visit(st);
    }
  }
}

}  // namespace

double phi_bar(const Phantom& ph, const ClassPartition& part, int class_id, double tol) {
  if (ph.dim != part.dim) throw std::invalid_argument("phantom/partition dimension mismatch");
  const ClassInfo& cls = part.classes.at(class_id);
  double total = 0.0;
  for (std::uint32_t l : cls.members) {
    if (trivial_mask(l, part.dim)) continue;
    ConfigSets cs = config_sets(l, part.dim);
    for_each_stratum(ph, cs, [&](const PatchStratum& st) {
      if (!st.sel.delta) return;
      Vec3 v = st.sel.wm - st.sel.bp;
      total += st.integrate([&](const SurfacePoint& sp) { return dot(v, sp.n); },
                            tol / cls.members.size() / 32.0);
    });
  }
  return total;
}

double lambda_l(const Phantom& ph, std::uint32_t mask, double tol) {
  if (trivial_mask(mask, ph.dim)) return 0.0;
  ConfigSets cs = config_sets(mask, ph.dim);
  double main_term = 0.0, correction = 0.0;
  for_each_stratum(ph, cs, [&](const PatchStratum& st) {
    if (st.sel.delta) {
      Vec3 bp = st.sel.bp, wm = st.sel.wm;
      main_term += st.integrate(
          [&](const SurfacePoint& sp) { return q_form(sp, bp) - q_form(sp, wm); },
          tol / 64.0);
    }
    // {h=0} can only carry positive measure where the normal stays
    // orthogonal to the achieving difference direction: on flats (h(n0)=0
    // exactly) and on cylinder arcs with bp-wm parallel to the axis.
    bool h_zero_stratum = false;
    Vec3 v = st.sel.bp - st.sel.wm;
    if (st.kind == PatchStratum::Kind::Flat) {
      double hb = support_h(cs.black, st.patch->normal0);
      double lw = 1e300;
      for (const Vec3& w : cs.white) lw = std::min(lw, dot(w, st.patch->normal0));
      h_zero_stratum = std::abs(hb - lw) < 1e-12;
    } else if (st.kind == PatchStratum::Kind::Cylinder) {
      h_zero_stratum = std::abs(dot(v, st.patch->frame_e)) < 1e-12 &&
                       std::abs(dot(v, st.patch->frame_f)) < 1e-12;
    }
    if (h_zero_stratum) {
      correction += st.integrate(
          [&](const SurfacePoint& sp) {
            // Tie-tolerant II^+/II^-: extrema over the full support sets.
            double hb = support_h(cs.black, sp.n);
            double ii_plus = -1e300;
            for (const Vec3& b : cs.black)
              if (dot(b, sp.n) >= hb - 1e-9)
                ii_plus = std::max(ii_plus, second_fundamental_form(sp, b));
            double lw = 1e300;
            for (const Vec3& w : cs.white) lw = std::min(lw, dot(w, sp.n));
            double ii_minus = 1e300;
            for (const Vec3& w : cs.white)
              if (dot(w, sp.n) <= lw + 1e-9)
                ii_minus = std::min(ii_minus, second_fundamental_form(sp, w));
            return std::max(0.0, ii_plus - ii_minus);
          },
          tol / 64.0);
    }
  });
  return 0.5 * main_term - 0.5 * correction;
}

double lambda_bar(const Phantom& ph, const ClassPartition& part, int class_id, double tol) {
  const ClassInfo& cls = part.classes.at(class_id);
  double sum = 0.0;
  for (std::uint32_t l : cls.members)
    sum += lambda_l(ph, l, tol / cls.members.size());
  return sum;
}

double zeta_constant() { return 3.0 * std::sqrt(2.0) * std::atan(std::sqrt(2.0)) / (2.0 * kPi); }

std::optional<double> closed_form_psi_bar(const ClassPartition& part, int class_id) {
  const ClassInfo& cls = part.classes.at(class_id);
  if (cls.label == "empty" || cls.label == "full") return 0.0;
  if (!cls.separable) return 0.0;  // delta vanishes identically
  if (part.dim != 3) return std::nullopt;
  double z = zeta_constant();
  double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  if (cls.label == "eta1" || cls.label == "eta7") return 3.0 - 4.0 * z;
  if (cls.label == "eta2" || cls.label == "eta6") return -3.0 + 12.0 * z - 3.0 * s2;
  if (cls.label == "eta3" || cls.label == "eta5") return 3.0 - 12.0 * z + 6.0 * s2 - 2.0 * s3;
  if (cls.label == "eta4_1") return -3.0 + 2.0 * s3;
  if (cls.label == "eta4_2") return 8.0 * z - 6.0 * s2 + 2.0 * s3;
  return std::nullopt;
}

std::optional<double> closed_form_mu_bar(const ClassPartition& part, int class_id) {
  const ClassInfo& cls = part.classes.at(class_id);
  if (cls.label == "empty" || cls.label == "full") return 0.0;
  if (!cls.separable) return 0.0;
  double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  if (part.dim == 3) {
    if (cls.label == "eta1") return 3.0 - s3;
    if (cls.label == "eta2") return 3.0 * s3 - 3.0 * s2;
    if (cls.label == "eta3") return -3.0 + 6.0 * s2 - 3.0 * s3;
    if (cls.label == "eta4_1" || cls.label == "eta4_2") return 0.0;
    if (cls.label == "eta5") return 3.0 - 6.0 * s2 + 3.0 * s3;
    if (cls.label == "eta6") return 3.0 * s2 - 3.0 * s3;
    if (cls.label == "eta7") return -(3.0 - s3);
    return std::nullopt;
  }
  // d=2: the complement antisymmetry pins eta2 to zero, and the unique
  // unbiased Euler weights pin eta1/eta3 to +/-2.
  if (cls.label == "eta1") return 2.0;
  if (cls.label == "eta2") return 0.0;
  if (cls.label == "eta3") return -2.0;
  return std::nullopt;
}

CoefficientTable compute_coefficient_table(const ClassPartition& part,
                                           const Phantom* phantom, double tol,
                                           bool per_config) {
  CoefficientTable table;
  table.dim = part.dim;
  for (const ClassInfo& cls : part.classes) {
    CoefficientEntry e;
    e.class_id = cls.id;
    double psi_q = psi_bar(part, cls.id, tol);
    double mu_q = mu_bar(part, cls.id, tol);
    auto psi_c = closed_form_psi_bar(part, cls.id);
    auto mu_c = closed_form_mu_bar(part, cls.id);
    if (psi_c && mu_c) {
      e.provenance = "closed-form";
      e.psi_bar = *psi_c;
      e.mu_bar = *mu_c;
      e.err = std::max(std::abs(psi_q - *psi_c), std::abs(mu_q - *mu_c));
    } else {
      e.provenance = "quadrature";
      e.psi_bar = psi_q;
      e.mu_bar = mu_q;
      e.err = tol;
    }
    if (phantom) {
      e.phi_bar = phi_bar(*phantom, part, cls.id, tol);
      e.lambda_bar = lambda_bar(*phantom, part, cls.id, tol);
    }
    table.entries.push_back(std::move(e));
  }
  if (per_config) {
    std::uint32_t nm = num_configurations(part.dim);
    table.mu_per_config.resize(nm, 0.0);
    table.lambda_per_config.resize(nm);
    for (std::uint32_t l = 0; l < nm; ++l) {
      table.mu_per_config[l] = trivial_mask(l, part.dim) ? 0.0 : mu_l(l, part.dim, tol);
      if (phantom) table.lambda_per_config[l] = lambda_l(*phantom, l, tol);
    }
  }
  return table;
}

namespace {

double set_circumradius(const std::vector<Vec3>& B, const std::vector<Vec3>& W) {
  double r = 0.0;
  for (const Vec3& s : B) r = std::max(r, norm(s));
  for (const Vec3& s : W) r = std::max(r, norm(s));
  return r;
}

// 1D measure of [I_lo, I_hi] \ union of intervals.
double interval_difference_measure(double lo, double hi,
                                   std::vector<std::pair<double, double>>& cut) {
  if (hi <= lo) return 0.0;
  for (auto& c : cut) {
    c.first = std::max(c.first, lo);
    c.second = std::min(c.second, hi);
  }
  cut.erase(std::remove_if(cut.begin(), cut.end(),
                           [](const auto& c) { return c.second <= c.first; }),
            cut.end());
  std::sort(cut.begin(), cut.end());
  double measure = hi - lo, covered_until = lo;
  for (const auto& c : cut) {
    if (c.second <= covered_until) continue;
    double start = std::max(c.first, covered_until);
    measure -= c.second - start;
    covered_until = c.second;
  }
  return measure;
}

double grid_pass(const Phantom& ph, const std::vector<Vec3>& B, const std::vector<Vec3>& W,
                 double a, std::int64_t max_columns, std::int64_t* used) {
  BBox box = bounding_box(ph);
  double rho = set_circumradius(B, W);
  for (int k = 0; k < ph.dim; ++k) {
    box.lo[k] -= a * rho;
    box.hi[k] += a * rho;
  }
  int col_axis = ph.dim - 1;
  Vec3 dir{0, 0, 0};
  dir[col_axis] = 1.0;

  if (ph.dim == 2) {
    std::int64_t nx = std::max<std::int64_t>(1, max_columns);
    double lx = box.hi[0] - box.lo[0];
    double gx = lx / nx;
    *used = nx;
    std::vector<double> colsum(static_cast<std::size_t>(nx), 0.0);
    parallel_chunks(nx, 0, [&](std::int64_t b, std::int64_t e, int) {
      std::vector<std::pair<double, double>> cut;
      for (std::int64_t i = b; i < e; ++i) {
        Vec3 p0{box.lo[0] + (i + 0.5) * gx, 0.0, 0.0};
        double lo = -1e300, hi = 1e300;
        bool empty = false;
        for (const Vec3& bb : B) {
          auto iv = line_body_interval(ph, p0 + a * bb, dir);
          if (!iv) { empty = true; break; }
          lo = std::max(lo, iv->first);
          hi = std::min(hi, iv->second);
        }
        if (empty || hi <= lo) continue;
        cut.clear();
        for (const Vec3& w : W) {
          auto iv = line_body_interval(ph, p0 + a * w, dir);
          if (iv) cut.push_back(*iv);
        }
        colsum[i] = interval_difference_measure(lo, hi, cut);
      }
    });
    double total = 0.0;
    for (double v : colsum) total += v;
    return total * gx;
  }

  double lx = box.hi[0] - box.lo[0], ly = box.hi[1] - box.lo[1];
  double g = std::sqrt(lx * ly / static_cast<double>(std::max<std::int64_t>(1, max_columns)));
  std::int64_t nx = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lx / g)));
  std::int64_t ny = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ly / g)));
  double gx = lx / nx, gy = ly / ny;
  *used = nx * ny;
  std::vector<double> rowsum(static_cast<std::size_t>(nx), 0.0);
  parallel_chunks(nx, 0, [&](std::int64_t rb, std::int64_t re, int) {
    std::vector<std::pair<double, double>> cut;
    for (std::int64_t i = rb; i < re; ++i) {
      double x = box.lo[0] + (i + 0.5) * gx;
      double acc = 0.0;
      for (std::int64_t j = 0; j < ny; ++j) {
        Vec3 p0{x, box.lo[1] + (j + 0.5) * gy, 0.0};
        double lo = -1e300, hi = 1e300;
        bool empty = false;
        for (const Vec3& bb : B) {
          auto iv = line_body_interval(ph, p0 + a * bb, dir);
          if (!iv) { empty = true; break; }
          lo = std::max(lo, iv->first);
          hi = std::min(hi, iv->second);
        }
        if (empty || hi <= lo) continue;
        cut.clear();
        for (const Vec3& w : W) {
          auto iv = line_body_interval(ph, p0 + a * w, dir);
          if (iv) cut.push_back(*iv);
        }
        acc += interval_difference_measure(lo, hi, cut);
      }
      rowsum[i] = acc;
    }
  });
  double total = 0.0;
  for (double v : rowsum) total += v;
  return total * gx * gy;
}

}  // namespace

HitMissResult hit_or_miss_volume(const Phantom& ph, const std::vector<Vec3>& B,
                                 const std::vector<Vec3>& W, double a,
                                 HitMissMethod method, std::int64_t budget,
                                 std::uint64_t seed) {
  if (B.empty() || W.empty())
    throw std::invalid_argument("hit-or-miss needs non-empty B and W");
  if (!(a > 0.0)) throw std::invalid_argument("spacing must be positive");
  double rho = set_circumradius(B, W);
  if (a * rho >= ph.r)
    throw std::invalid_argument("spacing too coarse: a * circumradius(B u W) must be < r");

  if (method == HitMissMethod::Grid) {
    HitMissResult res;
    std::int64_t used_fine = 0, used_coarse = 0;
    std::int64_t fine_budget = static_cast<std::int64_t>(budget / 1.25);
    double fine = grid_pass(ph, B, W, a, fine_budget, &used_fine);
    double coarse = grid_pass(ph, B, W, a, fine_budget / 4, &used_coarse);
    res.value = fine;
    res.error_bound = 1.5 * std::abs(fine - coarse) + 1e-300;
    res.work = used_fine + used_coarse;
    return res;
  }

  // Monte Carlo over the bounding window.
  BBox box = bounding_box(ph);
  for (int k = 0; k < ph.dim; ++k) {
    box.lo[k] -= a * rho;
    box.hi[k] += a * rho;
  }
  double vol = 1.0;
  for (int k = 0; k < ph.dim; ++k) vol *= box.hi[k] - box.lo[k];

  std::int64_t n = std::max<std::int64_t>(budget, 1000);
  std::vector<std::int64_t> hits_chunk(static_cast<std::size_t>(effective_threads(0)) + 1, 0);
  parallel_chunks(n, 0, [&](std::int64_t bgn, std::int64_t end, int chunk) {
    auto mix = [](std::uint64_t x) {
      x += 0x9E3779B97F4A7C15ull;
      x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
      x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
      return x ^ (x >> 31);
    };
    std::int64_t local = 0;
    for (std::int64_t i = bgn; i < end; ++i) {
      std::uint64_t s = mix(seed ^ static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ull);
      Vec3 z{0, 0, 0};
      for (int k = 0; k < ph.dim; ++k) {
        s = mix(s);
        z[k] = box.lo[k] + (box.hi[k] - box.lo[k]) *
                               (static_cast<double>(s >> 11) * 0x1.0p-53);
      }
      bool ok = true;
      for (const Vec3& bb : B)
        if (!contains(ph, z + a * bb)) { ok = false; break; }
      if (ok)
        for (const Vec3& w : W)
          if (contains(ph, z + a * w)) { ok = false; break; }
      if (ok) ++local;
    }
    hits_chunk[static_cast<std::size_t>(chunk) % hits_chunk.size()] += local;
  });
  std::int64_t hits = 0;
  for (std::int64_t h : hits_chunk) hits += h;
  double p = static_cast<double>(hits) / static_cast<double>(n);
  HitMissResult res;
  res.value = vol * p;
  res.error_bound = vol * 3.0 * std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
  res.work = n;
  return res;
}

}  // namespace voxelvol
