#include "msrimg/foldy_lax.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/LU>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

constexpr cdouble kI(0.0, 1.0);

struct Channel {
  Vec2 point;
  Vec2 frame[2];  // tau, n
  int kind = 0;   // 0 monopole, 1 tau dipole, 2 normal dipole
  double weight = 0.0;
  double contrast = 0.0;
  double thickness = 0.0;
  cdouble prefactor;
  std::size_t node = 0;
};

struct Hankel {
  cdouble h0;
  cdouble h1;
};

Hankel hankel_pair(double kr) {
  return {cdouble(std::cyl_bessel_j(0.0, kr), std::cyl_neumann(0.0, kr)),
          cdouble(std::cyl_bessel_j(1.0, kr), std::cyl_neumann(1.0, kr))};
}

// Kernel g = (i/4) H0(k|x - y|). Dipole channels apply (a . grad)/(ik) at the
// receiver and source respectively.
cdouble coupling_from_hankel(int receive_channel, int source_channel, const Vec2& e, double kr,
                             const Hankel& h, const Vec2* receive_frame, const Vec2* source_frame) {
  if (receive_channel == 0 && source_channel == 0) return 0.25 * kI * h.h0;
  if (source_channel == 0) return -0.25 * h.h1 * receive_frame[receive_channel - 1].dot(e);
  if (receive_channel == 0) return 0.25 * h.h1 * source_frame[source_channel - 1].dot(e);
  const Vec2& a = receive_frame[receive_channel - 1];
  const Vec2& b = source_frame[source_channel - 1];
  const double ae = a.dot(e);
  const double be = b.dot(e);
  return -0.25 * kI * (h.h0 * ae * be + (h.h1 / kr) * (a.dot(b) - 2.0 * ae * be));
}

}  // namespace

cdouble channel_coupling(int receive_channel, int source_channel, const Vec2& x, const Vec2& y,
                         const Vec2 receive_frame[2], const Vec2 source_frame[2], double k) {
  const Vec2 r = x - y;
  const double dist = r.norm();
  const double kr = k * dist;
  return coupling_from_hankel(receive_channel, source_channel, r / dist, kr, hankel_pair(kr),
                              receive_frame, source_frame);
}

Eigen::MatrixXcd assemble_msr_foldylax(std::span<const Inclusion> inclusions,
                                       const HalfSpaceMedium& medium, const FrequencyContext& ctx,
                                       const DirectionSet& dirs, double quad_spacing,
                                       const FoldyLaxOptions& options) {
  if (dirs.n_plus == 0)
    throw ConfigurationError("no propagating incidences: the refracted waves are all evanescent");
  const TransmittedWaves waves = transmitted_waves(ctx, medium, dirs);
  const double k = ctx.k_minus;

  std::vector<Channel> channels;
  std::size_t node_index = 0;
  for (const Inclusion& inc : inclusions) {
    const cdouble c = msr_prefactor(inc.curve.thickness(), ctx, medium);
    const PolarizationTensor tensor = polarization_tensor(medium, inc.material);
    const double contrasts[3] = {inc.material.eps_t / medium.eps_minus - 1.0, tensor.lambda_tau,
                                 tensor.lambda_n};
    for (const CurveSample& node : sample_curve(inc.curve, quad_spacing)) {
      for (int s = 0; s < 3; ++s) {
        if (contrasts[s] == 0.0) continue;
        Channel ch;
        ch.point = node.point;
        ch.frame[0] = node.tangent;
        ch.frame[1] = node.normal;
        ch.kind = s;
        ch.weight = node.weight;
        ch.contrast = contrasts[s];
        ch.thickness = inc.curve.thickness();
        ch.prefactor = c;
        ch.node = node_index;
        channels.push_back(ch);
      }
      ++node_index;
    }
  }

  const auto n = static_cast<Eigen::Index>(waves.size());
  const auto u = static_cast<Eigen::Index>(channels.size());
  if (u == 0) return Eigen::MatrixXcd::Zero(n, n);

  // Incident channel excitations, one column per propagating incidence.
  Eigen::MatrixXcd excitation(u, n);
  for (Eigen::Index a = 0; a < u; ++a) {
    const Channel& ch = channels[static_cast<std::size_t>(a)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vec2& v = waves.v[static_cast<std::size_t>(j)];
      const double phase = k * v.dot(ch.point);
      const double factor = ch.kind == 0 ? 1.0 : v.dot(ch.frame[ch.kind - 1]);
      excitation(a, j) = factor * waves.transmission[j] * cdouble(std::cos(phase), std::sin(phase));
    }
  }

  Eigen::MatrixXcd fields = excitation;
  if (options.coupling) {
    Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(u, u);
    // Channels of one node are contiguous; evaluate the Hankel pair once per
    // node pair.
    std::vector<Eigen::Index> first(node_index + 1, u);
    for (Eigen::Index a = u - 1; a >= 0; --a) first[channels[static_cast<std::size_t>(a)].node] = a;
    for (std::size_t m = node_index; m-- > 0;)
      if (first[m] == u) first[m] = first[m + 1];
    for (std::size_t p = 0; p < node_index; ++p) {
      for (std::size_t q = 0; q < node_index; ++q) {
        if (p == q || first[p] == first[p + 1] || first[q] == first[q + 1]) continue;
        const Channel& rx0 = channels[static_cast<std::size_t>(first[p])];
        const Channel& tx0 = channels[static_cast<std::size_t>(first[q])];
        const Vec2 r = rx0.point - tx0.point;
        const double dist = r.norm();
        const double kr = k * dist;
        const Hankel h = hankel_pair(kr);
        const Vec2 e = r / dist;
        for (Eigen::Index a = first[p]; a < first[p + 1]; ++a) {
          const Channel& rx = channels[static_cast<std::size_t>(a)];
          for (Eigen::Index b = first[q]; b < first[q + 1]; ++b) {
            const Channel& tx = channels[static_cast<std::size_t>(b)];
            const double strength = k * k * tx.thickness * tx.weight * tx.contrast;
            system(a, b) -= coupling_from_hankel(rx.kind, tx.kind, e, kr, h, rx.frame, tx.frame) * strength;
          }
        }
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    const double rcond = lu.rcond();
    if (!(rcond >= options.min_rcond)) {
      std::ostringstream os;
      os << "Foldy-Lax system is numerically singular at omega = " << ctx.omega
         << " (condition estimate " << (rcond > 0.0 ? 1.0 / rcond : INFINITY) << ")";
      throw ResonanceError(os.str(), rcond > 0.0 ? 1.0 / rcond : INFINITY);
    }
    fields = lu.solve(excitation);
  }

  Eigen::VectorXcd out_weight(u);
  for (Eigen::Index a = 0; a < u; ++a) {
    const Channel& ch = channels[static_cast<std::size_t>(a)];
    out_weight[a] = ch.prefactor * ch.weight * ch.contrast;
  }
  return excitation.transpose() * out_weight.asDiagonal() * fields;
}

Eigen::MatrixXcd assemble_msr_foldylax(const Inclusion& inclusion, const HalfSpaceMedium& medium,
                                       const FrequencyContext& ctx, const DirectionSet& dirs,
                                       double quad_spacing, const FoldyLaxOptions& options) {
  return assemble_msr_foldylax(std::span<const Inclusion>(&inclusion, 1), medium, ctx, dirs,
                               quad_spacing, options);
}

}  // namespace msrimg
