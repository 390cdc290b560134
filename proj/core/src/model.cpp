#include "lzep/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lzep/errors.hpp"
#include "lzep/repr_lift.hpp"
#include "lzep/su2_ops.hpp"

namespace lzep {
namespace {

constexpr double kEpGuardFraction = 1e-6;

void require_pt(const ModelParams& params, const char* where) {
  if (params.kind != ModelKind::PTSymmetric) {
    throw NoExceptionalPoint(std::string(where) + ": the Hermitian model has no exceptional points");
  }
}

// Nearest exceptional point time, for error reporting.
double nearest_ep(const ModelParams& params, double t) {
  const double t_ep = params.coupling / params.alpha;
  return t < 0.0 ? -t_ep : t_ep;
}

void require_regular(const ModelParams& params, double t, const char* where) {
  if (near_ep(params, t)) {
    throw NearExceptionalPoint(std::string(where) + ": t = " + std::to_string(t) +
                                   " lies within the exceptional point guard window; use ep_data()",
                               nearest_ep(params, t));
  }
}

// Unimodular sigma_z -> sigma_y change of basis; its columns are the J_y
// eigenvectors up to phase.
OperatorMatrix spinor_jy_rotation() {
  const double h = 1.0 / std::sqrt(2.0);
  OperatorMatrix u(2, 2);
  u << h, Complex(0.0, h), Complex(0.0, h), h;
  return u;
}

// Phi and X lifted while still in the J_y basis, plus the unitary lift of the
// basis change. Lifting in the z basis instead cancels badly near the
// exceptional points, where Phi is ill-conditioned.
struct JyLifts {
  OperatorMatrix rotation;
  OperatorMatrix phi;
  OperatorMatrix x;
};

JyLifts jy_lifts(const ModelParams& params, double t) {
  const Complex x = x_ratio(params, t);
  const Complex xc = std::conj(x);
  const Complex hi(0.0, 1.0 / std::sqrt(2.0));
  const double h = 1.0 / std::sqrt(2.0);
  // Closed forms relative to the columns of spinor_jy_rotation(); X = (Phi^dagger)^-1.
  OperatorMatrix phi_y(2, 2);
  phi_y << h, -hi * x, -hi / x, h;
  OperatorMatrix x_y(2, 2);
  x_y << h, -hi / xc, -hi * xc, h;
  return {lift(spinor_jy_rotation(), params.space), lift(phi_y, params.space), lift(x_y, params.space)};
}

OperatorMatrix hermitian_rotation(const ModelParams& params, double t) {
  // cos(phi) = -alpha t / lambda, sin(phi) = -v / lambda; exp(i phi sigma_y / 2).
  const double phi = std::atan2(-params.coupling, -params.alpha * t);
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  OperatorMatrix d(2, 2);
  d << c, s, -s, c;
  return lift(d, params.space);
}

}  // namespace

const char* to_string(ModelKind kind) noexcept {
  return kind == ModelKind::Hermitian ? "hermitian" : "pt";
}

ModelParams ModelParams::hermitian(int levels, double alpha, double v) {
  ModelParams p{ModelKind::Hermitian, alpha, v, SpinSpace(levels)};
  p.validate();
  return p;
}

ModelParams ModelParams::pt_symmetric(int levels, double alpha, double gamma) {
  ModelParams p{ModelKind::PTSymmetric, alpha, gamma, SpinSpace(levels)};
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("drive rate alpha must be positive and finite");
  }
  // v = 0 is the uncoupled diabatic limit; gamma = 0 would merge both
  // exceptional points at t = 0.
  if (kind == ModelKind::Hermitian) {
    if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
      throw InvalidParameter("coupling v must be nonnegative and finite");
    }
  } else if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw InvalidParameter("gamma must be positive and finite");
  }
}

OperatorMatrix hamiltonian_at(const ModelParams& params, double t) {
  const Generators g = build_generators(params.space);
  const Complex coupling = params.kind == ModelKind::Hermitian ? Complex(2.0 * params.coupling, 0.0)
                                                               : Complex(0.0, 2.0 * params.coupling);
  return (-2.0 * params.alpha * t) * g.jz + coupling * g.jx;
}

OperatorMatrix parity_operator(const SpinSpace& space) {
  OperatorMatrix p = OperatorMatrix::Zero(space.levels(), space.levels());
  for (int j = 0; j < space.levels(); ++j) p(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
  return p;
}

Complex lambda_at(const ModelParams& params, double t) {
  const double drive = params.alpha * t;
  const double g = params.coupling;
  if (params.kind == ModelKind::Hermitian) return std::hypot(drive, g);
  const double a = std::abs(drive);
  if (a >= g) return std::sqrt((a - g) * (a + g));
  return Complex(0.0, std::sqrt((g - a) * (g + a)));
}

double ep_guard(const ModelParams& params) {
  if (params.kind == ModelKind::Hermitian) return 0.0;
  return kEpGuardFraction * params.coupling / params.alpha;
}

bool near_ep(const ModelParams& params, double t) {
  if (params.kind == ModelKind::Hermitian) return false;
  const double t_ep = params.coupling / params.alpha;
  return std::abs(std::abs(t) - t_ep) <= ep_guard(params);
}

Complex x_ratio(const ModelParams& params, double t) {
  require_pt(params, "x_ratio");
  require_regular(params, t, "x_ratio");
  const double drive = params.alpha * t;
  const double g = params.coupling;
  if (std::abs(drive) > g) {
    // x^2 = (alpha t - gamma) / (alpha t + gamma); the sign follows gamma - alpha t.
    const double mag = std::sqrt((drive - g) / (drive + g));
    return g - drive > 0.0 ? mag : -mag;
  }
  // lambda = i s between the exceptional points, so x = -i (gamma - alpha t) / s.
  return Complex(0.0, -std::sqrt((g - drive) / (g + drive)));
}

SimilarityTransforms similarity_transforms(const ModelParams& params, double t) {
  if (params.kind == ModelKind::Hermitian) {
    OperatorMatrix rot = hermitian_rotation(params, t);
    return {rot, rot};
  }
  const JyLifts l = jy_lifts(params, t);
  return {l.rotation * l.phi * l.rotation.adjoint(), l.rotation * l.x * l.rotation.adjoint()};
}

EigenSystem eigensystem_at(const ModelParams& params, double t) {
  require_regular(params, t, "eigensystem_at");
  const SpinSpace& space = params.space;
  const int dim = space.levels();

  EigenSystem es;
  es.t = t;
  es.lambda = lambda_at(params, t);
  es.energies.resize(dim);
  for (int j = 0; j < dim; ++j) es.energies(j) = 2.0 * space.weight(j) * es.lambda;

  if (params.kind == ModelKind::Hermitian) {
    es.right_vectors = hermitian_rotation(params, t);
    es.left_vectors = es.right_vectors;
    return es;
  }

  const JyLifts l = jy_lifts(params, t);
  const OperatorMatrix right = l.rotation * l.phi;
  const OperatorMatrix left = l.rotation * l.x;
  es.right_vectors.resize(dim, dim);
  es.left_vectors.resize(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const double scale = std::sqrt(std::sqrt(left.col(j).squaredNorm() / right.col(j).squaredNorm()));
    es.right_vectors.col(j) = scale * right.col(j);
    es.left_vectors.col(j) = left.col(j) / scale;
  }
  return es;
}

int diabatic_index(const ModelParams& params, double t, int j) {
  return t < 0.0 ? j : params.space.n() - j;
}

EPData ep_data(const ModelParams& params) {
  require_pt(params, "ep_data");
  EPData ep;
  ep.t_plus = params.coupling / params.alpha;
  ep.t_minus = -ep.t_plus;

  const OperatorMatrix jy = jy_eigenbasis(params.space);
  ep.ep_vector_plus = jy.col(params.space.n());

  const OperatorMatrix h_minus = hamiltonian_at(params, ep.t_minus);
  Eigen::JacobiSVD<OperatorMatrix> svd(h_minus, Eigen::ComputeFullV);
  ep.ep_vector_minus = svd.matrixV().col(params.space.n()).normalized();
  fix_phase(ep.ep_vector_minus);

  ep.null_residual_plus = (hamiltonian_at(params, ep.t_plus) * ep.ep_vector_plus).norm();
  ep.null_residual_minus = (h_minus * ep.ep_vector_minus).norm();
  return ep;
}

RealMatrix overlap_matrix(const ModelParams& params, double t) {
  const EigenSystem es = eigensystem_at(params, t);
  const int dim = params.space.levels();
  OperatorMatrix unit = es.right_vectors;
  for (int j = 0; j < dim; ++j) unit.col(j).normalize();
  RealMatrix ov = RealMatrix::Identity(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      const double v = std::min(1.0, std::abs(unit.col(j).dot(unit.col(k))));
      ov(j, k) = v;
      ov(k, j) = v;
    }
  }
  return ov;
}

std::vector<SpectrumRow> spectrum_sweep(const ModelParams& params, std::span<const double> t_grid) {
  std::vector<SpectrumRow> rows;
  rows.reserve(t_grid.size());
  const int dim = params.space.levels();
  for (double t : t_grid) {
    SpectrumRow row;
    row.t = t;
    row.at_ep = near_ep(params, t);
    const Complex lambda = row.at_ep ? Complex(0.0) : lambda_at(params, t);
    row.energies.resize(dim);
    for (int j = 0; j < dim; ++j) row.energies(j) = 2.0 * params.space.weight(j) * lambda;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lzep
