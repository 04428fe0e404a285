#pragma once

#include "qseries.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qzk {

using Exponents = std::vector<int>;

int total_degree(const Exponents &e);

/* Integer linear form in the formal variables. Arguments of Pochhammer
 * factors are kept as e^L with L linear, so exponents never need a
 * general composition engine. */
struct LinearForm {
	std::map<std::string, int> coeffs;

	LinearForm &add(const std::string &var, int c);
	static LinearForm var(const std::string &v) { return LinearForm{}.add(v, 1); }
	bool empty() const;
	bool operator==(const LinearForm &) const = default;
};

LinearForm operator+(LinearForm a, const LinearForm &b);
LinearForm operator-(LinearForm a, const LinearForm &b);

/* Shared variable declaration of an ambient ring: ordered formal
 * variables (some flagged as exponent-class, like the a and b powers of
 * a trace, whose total degree is budgeted separately) and ordered
 * Laurent y-variables. */
struct VarTable {
	std::vector<std::string> formal;
	std::vector<bool> is_exponent; // parallel to formal
	std::vector<std::string> y;

	int formal_index(const std::string &name) const;
	int y_index(const std::string &name) const;
	bool operator==(const VarTable &) const = default;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vars(std::vector<std::string> formal,
                      std::vector<std::string> y = {},
                      std::vector<std::string> exponent_vars = {});

/* Truncation data carried by every ring element: q-order N, total
 * degree bound D on ordinary formal variables, total degree bound on
 * exponent-class variables, and the Laurent bound Y (each y-exponent
 * component stays in [-Y, Y]). */
struct Truncation {
	int q_order = 20;
	int degree = 4;
	int exp_degree = 4;
	int y_bound = 20;

	bool operator==(const Truncation &) const = default;
};

Truncation min_truncation(const Truncation &a, const Truncation &b);

/* One Laurent layer: map from y-exponent vector to q-series. A product
 * term whose exponent leaves [-Y, Y] in some component is dropped and
 * the saturation flag records the drop. */
class YLayer {
public:
	YLayer(int dim, int bound) : dim_(dim), bound_(bound) {}

	int dim() const { return dim_; }
	int bound() const { return bound_; }
	bool saturated() const { return saturated_; }
	void mark_saturated() { saturated_ = true; }
	bool is_zero() const { return terms_.empty(); }

	const std::map<Exponents, QSeries> &terms() const { return terms_; }

	/* Accumulates c * y^yexp, clipping out-of-bound exponents. */
	void accumulate(const Exponents &yexp, const QSeries &c);
	void prune();

	/* The exponent-zero entry, or the zero series at the given order. */
	QSeries y0_part(int order) const;

	bool operator==(const YLayer &o) const
	{
		return dim_ == o.dim_ && terms_ == o.terms_;
	}

private:
	int dim_;
	int bound_;
	bool saturated_ = false;
	std::map<Exponents, QSeries> terms_;
};

/* Element of Q[[q]][y^{+-1}][formal vars]: polynomial in the declared
 * formal variables with bounded-Laurent coefficients over truncated
 * q-series. Values are immutable in spirit: every operation builds a
 * fresh element. */
class RingElement {
public:
	RingElement(VarTablePtr vars, Truncation tr);

	static RingElement constant(VarTablePtr vars, Truncation tr, const Rational &c);
	static RingElement from_qseries(VarTablePtr vars, Truncation tr, const QSeries &s);
	static RingElement variable(VarTablePtr vars, Truncation tr, const std::string &name);
	static RingElement y_power(VarTablePtr vars, Truncation tr, const Exponents &yexp);

	const VarTablePtr &vars() const { return vars_; }
	const Truncation &trunc() const { return trunc_; }
	bool saturated() const { return saturated_; }
	bool degree_clipped() const { return degree_clipped_; }
	bool is_zero() const { return terms_.empty(); }
	long long term_count() const;

	const std::map<Exponents, YLayer> &terms() const { return terms_; }

	/* Accumulates c * (formal^fexp) * (y^yexp), honoring all bounds. */
	void accumulate(const Exponents &fexp, const Exponents &yexp, const QSeries &c);
	void mark_saturated() { saturated_ = true; }

	RingElement &operator+=(const RingElement &o);
	RingElement &operator-=(const RingElement &o);
	friend RingElement operator+(RingElement a, const RingElement &b) { return a += b; }
	friend RingElement operator-(RingElement a, const RingElement &b) { return a -= b; }
	friend RingElement operator*(const RingElement &a, const RingElement &b);
	RingElement operator-() const;
	RingElement &operator*=(const Rational &c);
	friend RingElement operator*(RingElement a, const Rational &c) { return a *= c; }
	RingElement &mul_qseries(const QSeries &s);
	RingElement pow(int e) const;

	/* Coefficient of the given formal monomial (coeff_extract). */
	YLayer coeff(const Exponents &fexp) const;
	QSeries coeff_y0(const Exponents &fexp) const;
	/* Keeps only terms with all-zero y-exponent. No saturation check;
	 * products::y0_coefficient wraps this with the contract. */
	RingElement y0_raw() const;

	bool operator==(const RingElement &o) const;

	std::string monomial_string(const Exponents &fexp) const;
	Exponents parse_monomial(const std::string &mono) const;
	std::string to_json() const;
	std::string to_json_pretty() const;

	int ordinary_degree(const Exponents &fexp) const;
	int exponent_degree(const Exponents &fexp) const;

private:
	void prune();

	VarTablePtr vars_;
	Truncation trunc_;
	bool saturated_ = false;
	bool degree_clipped_ = false;
	std::map<Exponents, YLayer> terms_;
};

/* Aligns two elements onto the union of their variable declarations and
 * the componentwise minimum truncation. */
std::pair<RingElement, RingElement> align(const RingElement &a, const RingElement &b);

/* Exponential sum_{k>=0} p^k / k!. The input may not contain a term
 * that is simultaneously q-constant, formal-degree 0 and y-exponent 0
 * (a nonzero constant would need transcendental values; a pure Laurent
 * term would make the sum non-terminating). */
RingElement exp_truncated(const RingElement &p);

/* Coefficient a_m of z^m in e^{f(z)} given the derivative list
 * derivs[t-1] = D^t f |_0 for t = 1..m:
 *   a_m = sum_{k_1 + 2 k_2 + ... = m} prod_t (derivs[t]/t!)^{k_t} / k_t!.
 */
RingElement bell_coefficient(const std::vector<RingElement> &derivs, int m);

std::string ylayer_key(const Exponents &yexp, const std::vector<std::string> &yvars);

} // namespace qzk
