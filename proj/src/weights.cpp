#include "dcyc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dcyc {

namespace {

const double kLogPi = std::log(kPi);

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

/// Tolerance for comparing log-values near log t: 1e-12 relative, widened to
/// what double precision can represent when |log t| is large.
double log_tolerance(double log_t, double log_w) {
  return 1e-12 * std::max({1.0, std::fabs(log_t) * 1e-3, std::fabs(log_w) * 1e-3});
}

/// ∫_{t1}^{t2} dt/(a + b t) in log form.
double affine_inverse_integral(double log_a, double log_b, double l1, double l2) {
  if (!(l2 > l1)) return 0.0;
  const double log_e1 = log_add_exp(log_a, log_b + l1);
  const double log_dt = l2 + std::log(-std::expm1(l1 - l2));
  if (log_e1 == -kInf) return kInf;
  if (log_b == -kInf) return std::exp(log_dt - log_a);
  const double log_x = log_b + log_dt - log_e1;
  const double log1px = log_x > 30.0 ? log_x + std::log1p(std::exp(-log_x)) : std::log1p(std::exp(log_x));
  return log1px * std::exp(-log_b);
}

/// ∫_{L1}^{L2} exp(e (L - Lr) + off) dL.
double exp_linear_integral(double e, double log_ref, double off, double l1, double l2) {
  if (!(l2 > l1)) return 0.0;
  if (std::fabs(e) < 1e-14) return std::exp(off) * (l2 - l1);
  const double base = e > 0.0 ? l2 : l1;
  if (!std::isfinite(base)) return kInf;
  const double width = l2 - l1;
  return std::exp(e * (base - log_ref) + off) * (-std::expm1(-std::fabs(e) * width)) / std::fabs(e);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::power: return "power";
    case Family::affine: return "affine";
    case Family::exp_power: return "exp_power";
    case Family::log_inverse_integral: return "log_inverse_integral";
  }
  return "power";
}

Family family_from_string(const std::string& s) {
  if (s == "power") return Family::power;
  if (s == "affine") return Family::affine;
  if (s == "exp_power") return Family::exp_power;
  if (s == "log_inverse_integral") return Family::log_inverse_integral;
  throw std::invalid_argument("unknown weight family: " + s);
}

// ------------------------------------------------------------- WeightProfile

WeightProfile::WeightProfile(std::vector<WeightPiece> pieces, std::shared_ptr<const InverseIntegral> integral)
    : pieces_(std::move(pieces)), integral_(std::move(integral)) {
  if (pieces_.empty()) throw std::invalid_argument("weight profile needs at least one piece");
  if (pieces_.front().log_lo != -kInf) throw std::invalid_argument("weight profile must start at t = 0");
  if (std::fabs(pieces_.back().log_hi - kLogPi) > 1e-12) throw std::invalid_argument("weight profile must end at π");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const WeightPiece& p = pieces_[i];
    if (!(p.log_hi > p.log_lo)) throw std::invalid_argument("weight piece " + std::to_string(i) + " is empty");
    if (i > 0 && pieces_[i - 1].log_hi != p.log_lo) {
      throw std::invalid_argument("weight pieces " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " are not contiguous");
    }
    if (p.family == Family::log_inverse_integral && !integral_) {
      throw std::invalid_argument("log-inverse-integral piece needs its ψ antiderivative");
    }
  }
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double l = pieces_[i].log_lo;
    const double left = piece_log_value(i - 1, l);
    const double right = piece_log_value(i, l);
    double tol = log_tolerance(l, left);
    for (std::size_t j : {i - 1, i}) {
      // w = A - log G loses digits to cancellation when w << |A|
      if (pieces_[j].family == Family::log_inverse_integral) {
        tol += 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(pieces_[j].A)) * std::exp(-left);
      }
    }
    if (!(std::fabs(left - right) <= tol)) {
      throw std::invalid_argument("weight profile discontinuous at knot t=" + fmt(std::exp(l)) + " (log values " +
                                  fmt(left) + " vs " + fmt(right) + ")");
    }
  }
}

WeightProfile WeightProfile::power(double p, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("power weight needs c > 0");
  WeightPiece piece;
  piece.family = Family::power;
  piece.log_lo = -kInf;
  piece.log_hi = kLogPi;
  piece.log_c = std::log(c);
  piece.p = p;
  return WeightProfile({piece});
}

WeightProfile WeightProfile::constant(double c) { return power(0.0, c); }

WeightProfile WeightProfile::exp_power(double k, double q, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("exp-power weight needs c > 0");
  WeightPiece piece;
  piece.family = Family::exp_power;
  piece.log_lo = -kInf;
  piece.log_hi = kLogPi;
  piece.log_c = std::log(c);
  piece.k = k;
  piece.q = q;
  return WeightProfile({piece});
}

std::size_t WeightProfile::locate(double log_t) const {
  // piece i covers (lo, hi]
  const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), log_t,
                                   [](const WeightPiece& p, double v) { return p.log_hi < v; });
  if (it == pieces_.end()) return pieces_.size() - 1;
  return static_cast<std::size_t>(it - pieces_.begin());
}

double WeightProfile::piece_log_value(std::size_t i, double log_t) const {
  const WeightPiece& p = pieces_[i];
  switch (p.family) {
    case Family::power: return p.p == 0.0 ? p.log_c : p.log_c + p.p * (log_t - p.log_ref);
    case Family::affine: return log_add_exp(p.log_a, p.log_b + log_t);
    case Family::exp_power: return p.log_c + p.k * std::exp(p.q * log_t);
    case Family::log_inverse_integral: {
      const double w = p.A - std::log(integral_->at_log(log_t));
      return std::log(w);
    }
  }
  return 0.0;
}

double WeightProfile::piece_log_slope(std::size_t i, double log_t) const {
  const WeightPiece& p = pieces_[i];
  switch (p.family) {
    case Family::power: return p.p;
    case Family::affine: return p.log_b == -kInf ? 0.0 : std::exp(p.log_b + log_t - log_add_exp(p.log_a, p.log_b + log_t));
    case Family::exp_power: return p.k * p.q * std::exp(p.q * log_t);
    case Family::log_inverse_integral: {
      const double log_psi = integral_->psi().log_value(log_t);
      const double g = integral_->at_log(log_t);
      return std::exp(log_t - log_psi - std::log(g) - piece_log_value(i, log_t));
    }
  }
  return 0.0;
}

double WeightProfile::log_value(double log_t) const { return piece_log_value(locate(log_t), log_t); }

double WeightProfile::log_slope(double log_t) const { return piece_log_slope(locate(log_t), log_t); }

double WeightProfile::derivative(double t) const {
  const double l = std::log(t);
  const std::size_t i = locate(l);
  return std::exp(piece_log_value(i, l) - l) * piece_log_slope(i, l);
}

double WeightProfile::max_knot_jump() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double l = pieces_[i].log_lo;
    worst = std::max(worst, std::fabs(std::expm1(piece_log_value(i - 1, l) - piece_log_value(i, l))));
  }
  return worst;
}

// ----------------------------------------------------------- InverseIntegral

InverseIntegral::InverseIntegral(WeightProfile psi) : psi_(std::move(psi)) {
  const auto& pieces = psi_.pieces();
  above_.assign(pieces.size(), 0.0);
  for (std::size_t i = pieces.size() - 1; i-- > 0;) {
    above_[i] = above_[i + 1] + piece_integral(i + 1, pieces[i + 1].log_lo, pieces[i + 1].log_hi);
  }
}

double InverseIntegral::piece_integral(std::size_t i, double l1, double l2) const {
  const WeightPiece& p = psi_.pieces()[i];
  if (!(l2 > l1)) return 0.0;
  switch (p.family) {
    case Family::power:
      // ∫ e^L / ψ dL with log ψ = log_c + p (L - Lr)
      return exp_linear_integral(1.0 - p.p, p.log_ref, p.log_ref - p.log_c, l1, l2);
    case Family::affine: return affine_inverse_integral(p.log_a, p.log_b, l1, l2);
    case Family::exp_power:
    case Family::log_inverse_integral: {
      if (l1 == -kInf) {
        // tail to 0 by tanh-sinh in t
        const double t2 = std::exp(l2);
        return endpoint_singular_integrate(
            [&](double t) { return t > 0.0 ? std::exp(-psi_.piece_log_value(i, std::log(t))) : 0.0; }, 0.0, t2);
      }
      const int panels = 32;
      double acc = 0.0;
      for (int j = 0; j < panels; ++j) {
        const double a = l1 + (l2 - l1) * j / panels;
        const double b = l1 + (l2 - l1) * (j + 1) / panels;
        acc += gauss_integrate([&](double l) { return std::exp(l - psi_.piece_log_value(i, l)); }, a, b, 16);
      }
      return acc;
    }
  }
  return 0.0;
}

double InverseIntegral::at_log(double log_t) const {
  if (log_t >= kLogPi) return 0.0;
  const std::size_t i = psi_.locate(log_t);
  return above_[i] + piece_integral(i, log_t, psi_.pieces()[i].log_hi);
}

double InverseIntegral::at_zero() const {
  return above_[0] + piece_integral(0, -kInf, psi_.pieces()[0].log_hi);
}

// ----------------------------------------------------------------- build_phi

WeightProfile build_phi(const NeighborhoodMeasure& measure, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("build_phi: β must lie in (0, 1]");
  struct Segment {
    double lo, hi;
    bool affine;
    double log_a, log_b;
  };
  std::vector<Segment> segs;
  for (const auto& mp : measure.pieces()) {
    const double la = mp.log_offset;
    const double lb = mp.slope > 0.0 ? std::log(mp.slope) : -kInf;
    auto h = [&](double l) { return log_add_exp(la, lb + l) - beta * l; };
    const double lo = mp.log_lo;
    const double hi = std::min(mp.log_hi, kLogPi);
    if (!(hi > lo)) continue;

    // h is convex in L; split at its minimiser, then bisect each monotone part.
    std::vector<double> cuts{lo, hi};
    double lm = kInf;
    if (la != -kInf && lb != -kInf && beta < 1.0) lm = std::log(beta) + la - std::log1p(-beta) - lb;
    std::vector<std::pair<double, double>> parts;
    if (lm > lo && lm < hi) {
      parts = {{lo, lm}, {lm, hi}};
      cuts.push_back(lm);
    } else {
      parts = {{lo, hi}};
    }
    auto h_at = [&](double l) {
      if (l == -kInf) {
        if (la != -kInf) return kInf;
        return beta < 1.0 ? -kInf : lb;
      }
      return h(l);
    };
    std::vector<double> roots;
    for (auto [x, y] : parts) {
      double hx = h_at(x);
      const double hy = h_at(y);
      if ((hx > 0.0) == (hy > 0.0) || hx == 0.0 || hy == 0.0) continue;
      if (x == -kInf) {
        double step = 1.0;
        x = y - step;
        while ((h(x) > 0.0) == (hy > 0.0)) {
          step *= 2.0;
          x = y - step;
        }
        hx = h(x);
      }
      double a = x, b = y;
      for (int it = 0; it < 400; ++it) {
        const double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        if ((h(m) > 0.0) == (hx > 0.0)) a = m;
        else b = m;
      }
      roots.push_back(0.5 * (a + b));
    }
    std::vector<double> bounds{lo};
    std::sort(roots.begin(), roots.end());
    for (double r : roots) {
      if (r > bounds.back() && r < hi) bounds.push_back(r);
    }
    bounds.push_back(hi);
    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
      const double a = bounds[j], b = bounds[j + 1];
      const double mid = a == -kInf ? b - 1.0 : 0.5 * (a + b);
      const bool measure_smaller = h(mid) < 0.0;
      segs.push_back({a, b, measure_smaller, la, lb});
    }
  }

  std::vector<WeightPiece> pieces;
  for (const Segment& s : segs) {
    WeightPiece p;
    p.log_lo = s.lo;
    p.log_hi = s.hi;
    if (s.affine) {
      if (s.log_a == -kInf) {
        p.family = Family::power;
        p.log_c = s.log_b;
        p.p = 1.0;
      } else {
        p.family = Family::affine;
        p.log_a = s.log_a;
        p.log_b = s.log_b;
      }
    } else {
      p.family = Family::power;
      p.log_c = 0.0;
      p.p = beta;
    }
    pieces.push_back(p);
  }
  // merge adjacent identical power pieces (e.g. slope-only affine runs)
  std::vector<WeightPiece> merged;
  for (const WeightPiece& p : pieces) {
    if (!merged.empty() && merged.back().family == Family::power && p.family == Family::power &&
        merged.back().p == p.p && merged.back().log_c == p.log_c && merged.back().log_ref == p.log_ref) {
      merged.back().log_hi = p.log_hi;
    } else {
      merged.push_back(p);
    }
  }
  pieces = std::move(merged);
  pieces.back().log_hi = kLogPi;
  WeightProfile phi(std::move(pieces));

  // φ(t)/t weakly decreasing on the resolved grid
  double prev = kInf;
  double prev_l = -kInf;
  for (const WeightPiece& p : phi.pieces()) {
    const double lo = p.log_lo == -kInf ? p.log_hi - 40.0 : p.log_lo;
    for (int j = 0; j <= 4; ++j) {
      const double l = lo + (p.log_hi - lo) * j / 4.0;
      if (l < prev_l) continue;
      const double v = phi.log_value(l) - l;
      if (v > prev + log_tolerance(l, v)) {
        throw std::domain_error("build_phi: φ(t)/t increases near t=" + fmt(std::exp(l)));
      }
      prev = std::min(prev, v);
      prev_l = l;
    }
  }
  return phi;
}

// ---------------------------------------------------------- concavity_check

ConcavityResult concavity_check(const WeightProfile& w, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("concavity_check: γ must be positive");
  ConcavityResult res;
  const double e = 1.0 - 1.0 / gamma;
  const double tol = 1e-10;
  const auto& pieces = w.pieces();
  auto fail = [&](double l, std::string detail, std::optional<std::size_t> knot = std::nullopt) {
    res.ok = false;
    res.violation_log_t = l;
    res.knot = knot;
    res.detail = std::move(detail);
    return res;
  };

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const WeightPiece& p = pieces[i];
    const double mid = p.log_lo == -kInf ? p.log_hi - 1.0 : 0.5 * (p.log_lo + p.log_hi);
    switch (p.family) {
      case Family::power:
        // h = c p t^{p - 1/γ}
        if (p.p > 0.0 && p.p - 1.0 / gamma > 1e-15) {
          return fail(mid, "power piece " + std::to_string(i) + ": γ·p = " + fmt(gamma * p.p) + " > 1");
        }
        break;
      case Family::affine:
        if (p.log_b != -kInf && e > 0.0) {
          return fail(mid, "affine piece " + std::to_string(i) + " has increasing t^{1-1/γ} w'");
        }
        break;
      case Family::exp_power: {
        // d log h / dL = k q^2 t^q + q - 1/γ, monotone in t
        for (double l : {p.log_lo, p.log_hi}) {
          double d;
          if (l == -kInf) d = p.q > 0.0 ? p.q - 1.0 / gamma : (p.k * p.q * p.q > 0.0 ? kInf : -kInf);
          else d = p.k * p.q * p.q * std::exp(p.q * l) + p.q - 1.0 / gamma;
          if (d > tol) return fail(l, "exp-power piece " + std::to_string(i) + " has increasing t^{1-1/γ} w'");
        }
        break;
      }
      case Family::log_inverse_integral: {
        // w' = 1/(ψ G): d log h / dL = -σ_ψ + (1 - 1/γ) + (t/ψ)/G
        const InverseIntegral& g = *w.inverse_integral();
        const WeightProfile& psi = g.psi();
        const std::size_t first = psi.locate(p.log_lo);
        const std::size_t last = psi.locate(p.log_hi);
        for (std::size_t j = first; j <= last; ++j) {
          const double a = std::max(psi.pieces()[j].log_lo, p.log_lo);
          const double b = std::min(psi.pieces()[j].log_hi, p.log_hi);
          if (!(b > a)) continue;
          for (int s = 0; s <= 4; ++s) {
            const double l = a + (b - a) * s / 4.0;
            const double sigma = psi.piece_log_slope(j, l);
            const double ratio = std::exp(l - psi.piece_log_value(j, l)) / g.at_log(l);
            const double d = -sigma + e + ratio;
            if (d > tol) {
              return fail(l, "log-inverse-integral piece " + std::to_string(i) + ": (t/ψ)/G = " + fmt(ratio) +
                                 " exceeds p_ψ - (1 - 1/γ) = " + fmt(sigma - e));
            }
          }
        }
        break;
      }
    }
  }
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const double l = pieces[i].log_lo;
    const double sl = w.piece_log_slope(i - 1, l);
    const double sr = w.piece_log_slope(i, l);
    if (sr <= 0.0) continue;
    const double left = sl > 0.0 ? w.piece_log_value(i - 1, l) + std::log(sl) : -kInf;
    const double right = w.piece_log_value(i, l) + std::log(sr);
    if (left < right - 1e-12) {
      return fail(l, "knot " + std::to_string(i) + " at t=" + fmt(std::exp(l)) + ": left derivative " +
                         fmt(std::exp(left - l)) + " < right derivative " + fmt(std::exp(right - l)),
                  i);
    }
  }
  return res;
}

// -------------------------------------------------------- log_integrability

namespace {

/// ∫_{t1}^{t2} |log w| dt on one piece.
double abs_log_piece(const WeightProfile& w, std::size_t i, double l1, double l2) {
  const WeightPiece& p = w.pieces()[i];
  if (!(l2 > l1)) return 0.0;
  auto t_of = [](double l) { return l == -kInf ? 0.0 : std::exp(l); };
  switch (p.family) {
    case Family::power: {
      if (p.p == 0.0) return std::fabs(p.log_c) * (t_of(l2) - t_of(l1));
      // antiderivative of lc + p(L - Lr): t (lc + p (L - Lr - 1))
      auto prim = [&](double l) {
        if (l == -kInf) return 0.0;
        return std::exp(l) * (p.log_c + p.p * (l - p.log_ref - 1.0));
      };
      const double root = p.log_ref - p.log_c / p.p;
      if (root > l1 && root < l2) return std::fabs(prim(root) - prim(l1)) + std::fabs(prim(l2) - prim(root));
      return std::fabs(prim(l2) - prim(l1));
    }
    case Family::exp_power: {
      auto prim = [&](double l) {
        if (l == -kInf) return p.q > -1.0 ? 0.0 : -kInf;
        const double t = std::exp(l);
        if (p.q == -1.0) return p.log_c * t + p.k * l;
        return p.log_c * t + p.k * std::exp((p.q + 1.0) * l) / (p.q + 1.0);
      };
      double root = kInf;
      if (p.k != 0.0 && p.q != 0.0 && -p.log_c / p.k > 0.0) root = std::log(-p.log_c / p.k) / p.q;
      if (root > l1 && root < l2) return std::fabs(prim(root) - prim(l1)) + std::fabs(prim(l2) - prim(root));
      return std::fabs(prim(l2) - prim(l1));
    }
    case Family::affine:
    case Family::log_inverse_integral: {
      auto f = [&](double l) { return std::fabs(w.piece_log_value(i, l)) * std::exp(l); };
      if (l1 == -kInf) {
        const double t2 = std::exp(l2);
        return endpoint_singular_integrate(
            [&](double t) { return t > 0.0 ? std::fabs(w.piece_log_value(i, std::log(t))) : 0.0; }, 0.0, t2);
      }
      return adaptive_integrate(f, l1, l2, 1e-12);
    }
  }
  return 0.0;
}

}  // namespace

IntegralValue log_integrability(const WeightProfile& w, const StepFunction& n) {
  IntegralValue out;
  const WeightPiece& lead = w.pieces().front();
  const double n0 = n.values().front();
  if (n0 > 0.0 && lead.family == Family::exp_power && lead.k != 0.0 && lead.q <= -1.0) {
    out.finite = false;
    out.value = kInf;
    out.evidence = "log w ~ k t^q near 0 with q = " + fmt(lead.q) + " <= -1 and N_E(0+) = " + fmt(n0);
    return out;
  }
  std::vector<double> terms;
  for (const StepFunction::Piece& s : n.pieces()) {
    if (s.value == 0.0) continue;
    std::size_t i = w.locate(s.log_lo == -kInf ? w.pieces().front().log_hi - 1e3 : s.log_lo);
    if (s.log_lo == -kInf) i = 0;
    for (; i < w.pieces().size(); ++i) {
      const WeightPiece& p = w.pieces()[i];
      const double a = std::max(p.log_lo, s.log_lo);
      const double b = std::min(p.log_hi, s.log_hi);
      if (a >= s.log_hi) break;
      if (b > a) terms.push_back(s.value * abs_log_piece(w, i, a, b));
    }
  }
  out.value = pairwise_sum(terms);
  out.finite = std::isfinite(out.value);
  out.evidence = out.finite ? "closed forms on power pieces, quadrature elsewhere" : "non-finite piece integral";
  return out;
}

// ---------------------------------------------------------------- w_delta

void CertificateParams::validate() const {
  if (!(alpha > 0.5)) throw std::invalid_argument("certificate: need 1/2 < α");
  if (!(beta > alpha)) throw std::invalid_argument("certificate: need α < β");
  if (mu && !(beta < 0.5 * (1.0 + *mu))) throw std::invalid_argument("certificate: need β < (1+μ)/2");
  if (!(gamma > 2.0)) throw std::invalid_argument("certificate: need γ > 2");
  if (!(1.0 - 1.0 / gamma < alpha)) throw std::invalid_argument("certificate: need 1 - 1/γ < α");
  if (!(log_delta < 0.0)) throw std::invalid_argument("certificate: need δ in (0, 1)");
}

WDelta w_delta_family(const std::shared_ptr<const InverseIntegral>& g, double alpha, double log_delta) {
  if (!g) throw std::invalid_argument("w_delta_family: missing ψ antiderivative");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("w_delta_family: α must lie in (0, 1)");
  if (!(log_delta < kLogPi)) throw std::invalid_argument("w_delta_family: δ must be below π");
  const WeightProfile& psi = g->psi();
  WDelta out;
  out.log_delta = log_delta;
  const double log_ratio = log_delta - psi.log_value(log_delta);
  out.ratio = std::exp(log_ratio);
  if (log_ratio > 1e-12) {
    throw std::domain_error("w_delta_family: δ/ψ(δ) = " + fmt(out.ratio) +
                            " > 1, no η_δ in [δ, π] (δ too large for this ψ)");
  }
  const double g_delta = g->at_log(log_delta);
  out.A = out.ratio + std::log(g_delta);
  const double target = g_delta * std::exp(out.ratio - 1.0);

  if (log_ratio >= -1e-15) {
    out.log_eta = log_delta;
    out.degenerate_middle = true;
  } else {
    double lo = log_delta, hi = kLogPi;
    for (int it = 0; it < 2000; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (g->at_log(mid) > target) lo = mid;
      else hi = mid;
    }
    out.log_eta = 0.5 * (lo + hi);
    if (out.log_eta <= log_delta) {
      out.log_eta = log_delta;
      out.degenerate_middle = true;
    }
  }

  std::vector<WeightPiece> pieces;
  WeightPiece low;
  low.family = Family::power;
  low.log_lo = -kInf;
  low.log_hi = log_delta;
  low.log_c = log_ratio;
  low.p = 1.0 - alpha;
  low.log_ref = log_delta;
  pieces.push_back(low);
  if (!out.degenerate_middle) {
    WeightPiece middle;
    middle.family = Family::log_inverse_integral;
    middle.log_lo = log_delta;
    middle.log_hi = out.log_eta;
    middle.A = out.A;
    pieces.push_back(middle);
  }
  if (out.log_eta < kLogPi) {
    WeightPiece top;
    top.family = Family::power;
    top.log_lo = out.log_eta;
    top.log_hi = kLogPi;
    pieces.push_back(top);
  } else {
    pieces.back().log_hi = kLogPi;
  }
  out.w = WeightProfile(std::move(pieces), g);
  return out;
}

bool knot_inequality(const InverseIntegral& g, double alpha, double log_delta) {
  return g.at_log(log_delta) >= 1.0 / (1.0 - alpha);
}

}  // namespace dcyc
