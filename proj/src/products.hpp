#pragma once

#include "ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qzk {

inline constexpr long long kDefaultTermBudget = 4'000'000;

struct PochPower {
	int coeff = 1;
	std::string var; // empty for a plain integer exponent

	bool formal() const { return !var.empty(); }
};

/* One infinite-product factor (e^L y^yexp q^shift ; q)_inf raised to an
 * integer or formal power. A factor with shift 0 must carry a nonzero
 * y-exponent, otherwise the n = 0 binomial (1 - e^L) has no unit
 * constant term. */
struct PochFactor {
	LinearForm log_arg;
	Exponents y_exp; // empty means all-zero
	int q_shift = 1;
	PochPower power;
};

/* Logarithm of the unit-power factor:
 * log (u q^c)_inf = - sum_{d>=1} (1/d) e^{dL} y^{d v} q^{cd}/(1-q^d). */
RingElement poch_log(const PochFactor &f, const VarTablePtr &vars, const Truncation &tr);

/* Product of factors. Integer powers multiply the binomials
 * (1 - e^L y^v q^{c+n}) directly (inverses through per-binomial
 * geometric series); factors with formal powers are grouped per
 * exponent variable and exponentiated as exp(var * sum of logs). */
RingElement poch_product(const std::vector<PochFactor> &factors,
                         const VarTablePtr &vars, const Truncation &tr,
                         long long term_budget = kDefaultTermBudget);

struct TraceSpec {
	enum class Kind { lemma31, theorem32, trace_pn, bloch_okounkov };

	Kind kind = Kind::lemma31;
	int r = 2;       // theorem32: number of numerator factors
	int players = 2; // trace_pn: the N of the product
	bool with_ab = false;
	int q_order = 20;
	int degree = 4;
	std::optional<int> y_bound; // default: q_order
	long long term_budget = kDefaultTermBudget;
};

/* Accepts "lemma31", "bo", "thm32:<r>" and "pn:<N>"; fills the
 * desk-scale default truncations for the kind. */
TraceSpec parse_trace_spec(const std::string &name);
std::string trace_name(const TraceSpec &spec);

RingElement build_trace(const TraceSpec &spec);

/* Coefficient of y_1^0 ... y_k^0. Refuses when saturation may have
 * dropped contributing terms, i.e. when the element is saturated and
 * its Laurent bound is below its q-order. */
RingElement y0_coefficient(const RingElement &p);

} // namespace qzk
