#pragma once

#include <string>

#include "pmpcert/autocorr.hpp"
#include "pmpcert/signals.hpp"

namespace pmpcert {

enum class TailPolicy { asymptotic_sign, declared_inconclusive };

/// Uniform grid on (0, t_max] discretizing the "for all t > 0" conditions,
/// plus a tail policy for what lies beyond the horizon.
struct CheckGrid {
  double t_max = 0.0;  // 0 means: pick 20/sigma from the model
  int points = 4096;
  TailPolicy tail_policy = TailPolicy::asymptotic_sign;
  double eval_eps = kEvalEps;

  double resolved_t_max(const SpectralInfo& info) const {
    return t_max > 0.0 ? t_max : 20.0 / info.sigma;
  }
};

enum class Verdict { holds, fails, inconclusive };

struct ConditionResult {
  std::string name;
  double min_margin = 0.0;
  double argmin_t = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string tail_note;
};

enum class PmpVerdict { certified_via_i, certified_via_ii, failed, inconclusive };

struct PmpCertificate {
  ConditionResult logconv_der;
  ConditionResult convexity;
  ConditionResult logconcavity;
  PmpVerdict verdict = PmpVerdict::inconclusive;
};

/// ddot{R}^2 >= dot{R} dddot{R} on (0, t_max], tail per policy.
ConditionResult check_logconv_der(const AutocorrelationModel& model,
                                  const CheckGrid& grid);

/// ddot{R}(t) >= 0 on {0} u (0, t_max].
ConditionResult check_convexity(const AutocorrelationModel& model,
                                const CheckGrid& grid);

/// R > 0 and dot{R}^2 >= R ddot{R} on {0} u (0, t_max].
ConditionResult check_logconcavity(const AutocorrelationModel& model,
                                   const CheckGrid& grid);

/// Combines the three checks; R^T is PMP for every period when the
/// derivative condition holds together with convexity (via i) or
/// log-concavity (via ii). Via i takes precedence when both hold.
PmpCertificate certify_pmp(const AutocorrelationModel& model,
                           const CheckGrid& grid);

/// External positivity of (A, P c^T, c), i.e. min over the grid of
/// h(t) = c e^{At} P c^T. A passing result certifies that the gain is
/// maximized at DC (verified independently by the gain module).
ConditionResult check_positive_domination(const StateSpace& sys,
                                          const CheckGrid& grid);

/// Samples the periodized impulse response g^T and its derivative and runs
/// the sampled kernel-PMP test. holds certifies R^T is PMP for this single T;
/// a failing kernel test yields no conclusion (sufficiency only).
Verdict check_kernel_pmp_sufficient(const StateSpace& sys, double T,
                                    int samples);

/// Sign certificate for f(t) = det([u^T; v^T] e^{At} [w x]) evaluated as a
/// scalar response of the second additive-compound system (Cauchy-Binet).
ConditionResult compound2_sign_certificate(const Matrix& A, const Vector& u,
                                           const Vector& v, const Vector& w,
                                           const Vector& x,
                                           const CheckGrid& grid);

const char* to_string(Verdict v);
const char* to_string(PmpVerdict v);

}  // namespace pmpcert
