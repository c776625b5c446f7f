#pragma once

#include "wtf/step.hpp"
#include "wtf/tiles.hpp"
#include "wtf/wavepacket.hpp"

namespace wtf {

/// C(f) = sum_P <f, phi_{P1}> phi_{P1} chi_{N(x) in omega_{P2}}.
StepFunction carleson_apply(const BitileCollection& coll, const StepFunction& f,
                            const StepFunction& n);
/// Adjoint: C*(g) = sum_P <g chi_{N in omega_{P2}}, phi_{P1}> phi_{P1}.
StepFunction carleson_adjoint_apply(const BitileCollection& coll, const StepFunction& g,
                                    const StepFunction& n);

/// Quartile collections act through their sub-bitiles P12.
StepFunction carleson_apply(const QuartileCollection& coll, const StepFunction& f,
                            const StepFunction& n);
StepFunction carleson_adjoint_apply(const QuartileCollection& coll, const StepFunction& g,
                                    const StepFunction& n);

/// B(f1,f2) = sum_Q |I_Q|^{-1/2} <f1, phi_{Q1}> <f2, phi_{Q2}> phi_{Q3}.
StepFunction bht_apply(const QuartileCollection& coll, const StepFunction& f1,
                       const StepFunction& f2);

/// Restriction of B to quartiles with omega_{Q3} inside the window's frequency
/// interval; only the frequency component of the window tile matters.
StepFunction b_restricted(const Tile& window, const QuartileCollection& coll,
                          const StepFunction& f1, const StepFunction& f2);
/// Restriction of C to quartiles with omega_{Q1} inside the window.
StepFunction c_restricted(const Tile& window, const QuartileCollection& coll,
                          const StepFunction& f2, const StepFunction& n);

/// Complementary restriction: sum over P with omega_{Q'_1} inside omega_{P2}.
StepFunction c_complement(const Bitile& qprime, const QuartileCollection& pcoll,
                          const StepFunction& f1, const StepFunction& n);

StepFunction t_prime_apply(const QuartileCollection& pcoll, const QuartileCollection& qcoll,
                           const StepFunction& f1, const StepFunction& f2, const StepFunction& n);
StepFunction t_double_prime_apply(const QuartileCollection& pcoll,
                                  const QuartileCollection& qcoll, const StepFunction& f1,
                                  const StepFunction& f2, const StepFunction& n);
StepFunction t_apply(const QuartileCollection& pcoll, const QuartileCollection& qcoll,
                     const StepFunction& f1, const StepFunction& f2, const StepFunction& n);

enum class LambdaForm { Full, Prime, DoublePrime };

/// Trilinear pairing: integral of T(f1, f2) * f3.
QuadExt lambda_form(LambdaForm which, const QuartileCollection& pcoll,
                    const QuartileCollection& qcoll, const StepFunction& f1,
                    const StepFunction& f2, const StepFunction& f3, const StepFunction& n);

/// Reordered coefficients of the prime form:
/// a3_{Q3} = sum over P with omega_{Q3} inside omega_{P1} of
/// <f3 chi_{N in omega_{P2}}, phi_{P1}> <phi_{P1}, phi_{Q3}>, stored at j = 3.
CoefficientSequence a3_coefficients(const QuartileCollection& qcoll,
                                    const QuartileCollection& pcoll, const StepFunction& f3,
                                    const StepFunction& n);

/// sum_Q |I_Q|^{-1/2} <f1,phi_{Q1}> <f2,phi_{Q2}> a3_{Q3}; equals the prime form.
QuadExt lambda_prime_reordered(const QuartileCollection& pcoll, const QuartileCollection& qcoll,
                               const StepFunction& f1, const StepFunction& f2,
                               const StepFunction& f3, const StepFunction& n);

/// C_P(f1) C_Q(f2) - T''_{P,Q}(f1,f2) - T''_{Q,P}(f2,f1); expected to equal the
/// diagonal sum over shared quartiles.
StepFunction product_identity_residual(const QuartileCollection& pcoll,
                                       const QuartileCollection& qcoll, const StepFunction& f1,
                                       const StepFunction& f2, const StepFunction& n);
StepFunction product_identity_diagonal(const QuartileCollection& pcoll,
                                       const QuartileCollection& qcoll, const StepFunction& f1,
                                       const StepFunction& f2, const StepFunction& n);

}  // namespace wtf
