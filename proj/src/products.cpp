#include "products.hpp"

#include <algorithm>
#include <cmath>

namespace qzk {

namespace {

int max_abs(const Exponents &v)
{
	int m = 0;
	for (int x : v)
		m = std::max(m, std::abs(x));
	return m;
}

Exponents scaled(const Exponents &v, int d)
{
	Exponents r(v.size());
	for (size_t i = 0; i < v.size(); ++i)
		r[i] = v[i] * d;
	return r;
}

void validate_factor(const PochFactor &f, const VarTablePtr &vars)
{
	if (f.q_shift < 0)
		throw Error(errc::invalid_argument, "negative q-shift on factor");
	if (!f.y_exp.empty() && f.y_exp.size() != vars->y.size())
		throw Error(errc::invalid_argument, "factor y-exponent size mismatch");
	bool y_zero = true;
	for (int e : f.y_exp)
		if (e != 0)
			y_zero = false;
	if (f.q_shift == 0 && y_zero)
		throw Error(errc::domain,
		            "factor with q-shift 0 needs a nonzero y-exponent");
	for (const auto &[name, c] : f.log_arg.coeffs)
		if (vars->formal_index(name) < 0)
			throw Error(errc::invalid_argument,
			            "factor uses undeclared variable: " + name);
	if (f.power.formal() && vars->formal_index(f.power.var) < 0)
		throw Error(errc::invalid_argument,
		            "undeclared exponent variable: " + f.power.var);
}

Exponents factor_yexp(const PochFactor &f, const VarTablePtr &vars)
{
	if (f.y_exp.empty())
		return Exponents(vars->y.size(), 0);
	return f.y_exp;
}

/* e^{mult * L} as a ring element, truncated by the degree bounds. */
RingElement exp_of_linear(const VarTablePtr &vars, const Truncation &tr,
                          const LinearForm &L, int mult)
{
	RingElement lin(vars, tr);
	Exponents yzero(vars->y.size(), 0);
	for (const auto &[name, c] : L.coeffs) {
		Exponents fexp(vars->formal.size(), 0);
		fexp[vars->formal_index(name)] = 1;
		lin.accumulate(fexp, yzero,
		               QSeries::constant(Rational(c) * mult, tr.q_order));
	}
	RingElement r = RingElement::constant(vars, tr, Rational(1));
	if (lin.is_zero())
		return r;
	RingElement inc = r;
	int kmax = std::max(tr.degree, tr.exp_degree) + 1;
	for (int k = 1; k <= kmax; ++k) {
		inc = inc * lin;
		inc *= frac(1, k);
		if (inc.is_zero())
			break;
		r += inc;
	}
	return r;
}

} // namespace

RingElement poch_log(const PochFactor &f, const VarTablePtr &vars, const Truncation &tr)
{
	validate_factor(f, vars);
	Exponents v = factor_yexp(f, vars);
	int vmax = max_abs(v);
	RingElement out(vars, tr);
	for (int d = 1;; ++d) {
		if (f.q_shift >= 1 && static_cast<long>(d) * f.q_shift > tr.q_order)
			break;
		if (f.q_shift == 0 && static_cast<long>(d) * vmax > tr.y_bound) {
			out.mark_saturated();
			break;
		}
		RingElement term = exp_of_linear(vars, tr, f.log_arg, d);
		term = term * RingElement::y_power(vars, tr, scaled(v, d));
		QSeries g = geometric_series(d, f.q_shift, tr.q_order);
		g *= -frac(1, d);
		term.mul_qseries(g);
		out += term;
	}
	return out;
}

namespace {

/* Multiplies acc by (1 - e^L y^v q^m)^{sign 1}; sign -1 goes through
 * the geometric expansion of the single binomial. */
void apply_binomial(RingElement &acc, const VarTablePtr &vars, const Truncation &tr,
                    const LinearForm &L, const Exponents &v, int m, bool inverse)
{
	int vmax = max_abs(v);
	if (!inverse) {
		RingElement b = RingElement::constant(vars, tr, Rational(1));
		RingElement u = exp_of_linear(vars, tr, L, 1) *
		                RingElement::y_power(vars, tr, v);
		u.mul_qseries(QSeries::monomial(m, Rational(-1), tr.q_order));
		b += u;
		acc = acc * b;
		return;
	}
	RingElement inv(vars, tr);
	for (int j = 0;; ++j) {
		if (static_cast<long>(j) * m > tr.q_order)
			break;
		if (static_cast<long>(j) * vmax > tr.y_bound) {
			inv.mark_saturated();
			break;
		}
		RingElement term = exp_of_linear(vars, tr, L, j) *
		                   RingElement::y_power(vars, tr, scaled(v, j));
		term.mul_qseries(QSeries::monomial(j * m, Rational(1), tr.q_order));
		inv += term;
	}
	acc = acc * inv;
}

} // namespace

RingElement poch_product(const std::vector<PochFactor> &factors,
                         const VarTablePtr &vars, const Truncation &tr,
                         long long term_budget)
{
	for (const auto &f : factors)
		validate_factor(f, vars);

	RingElement result = RingElement::constant(vars, tr, Rational(1));
	auto check_budget = [&] {
		if (result.term_count() > term_budget)
			throw Error(errc::budget, "term budget exceeded while "
			                          "expanding a product");
	};

	/* Formal powers are grouped per exponent variable so that ratios
	 * like ((xy)_inf/(y)_inf)^a exponentiate one combined logarithm. */
	std::map<std::string, RingElement> grouped;
	for (const auto &f : factors) {
		if (f.power.formal()) {
			RingElement lg = poch_log(f, vars, tr);
			lg *= Rational(f.power.coeff);
			auto it = grouped.find(f.power.var);
			if (it == grouped.end())
				grouped.emplace(f.power.var, std::move(lg));
			else
				it->second += lg;
			continue;
		}
		if (f.power.coeff == 0)
			continue;
		Exponents v = factor_yexp(f, vars);
		bool inverse = f.power.coeff < 0;
		int reps = std::abs(f.power.coeff);
		for (int rep = 0; rep < reps; ++rep) {
			for (int m = f.q_shift; m <= tr.q_order; ++m) {
				apply_binomial(result, vars, tr, f.log_arg, v, m,
				               inverse);
				check_budget();
			}
		}
	}
	for (auto &[var, lg] : grouped) {
		RingElement scaled_log =
		    RingElement::variable(vars, tr, var) * lg;
		result = result * exp_truncated(scaled_log);
		check_budget();
	}
	return result;
}

TraceSpec parse_trace_spec(const std::string &name)
{
	TraceSpec spec;
	auto colon = name.find(':');
	std::string head = name.substr(0, colon);
	if (head == "lemma31") {
		spec.kind = TraceSpec::Kind::lemma31;
	} else if (head == "bo") {
		spec.kind = TraceSpec::Kind::bloch_okounkov;
		spec.degree = 6;
	} else if (head == "thm32") {
		spec.kind = TraceSpec::Kind::theorem32;
		spec.r = colon == std::string::npos ? 2
		                                    : std::stoi(name.substr(colon + 1));
	} else if (head == "pn") {
		spec.kind = TraceSpec::Kind::trace_pn;
		spec.players = colon == std::string::npos
		                   ? 2
		                   : std::stoi(name.substr(colon + 1));
		spec.q_order = 10;
	} else {
		throw Error(errc::invalid_argument, "unknown trace: " + name);
	}
	return spec;
}

std::string trace_name(const TraceSpec &spec)
{
	switch (spec.kind) {
	case TraceSpec::Kind::lemma31: return "lemma31";
	case TraceSpec::Kind::bloch_okounkov: return "bo";
	case TraceSpec::Kind::theorem32: return "thm32:" + std::to_string(spec.r);
	case TraceSpec::Kind::trace_pn: return "pn:" + std::to_string(spec.players);
	}
	return "?";
}

RingElement build_trace(const TraceSpec &spec)
{
	if (spec.q_order < 1 || spec.degree < 0)
		throw Error(errc::invalid_argument, "trace truncations must be positive");
	Truncation tr{spec.q_order, spec.degree, spec.degree,
	              spec.y_bound.value_or(spec.q_order)};

	switch (spec.kind) {
	case TraceSpec::Kind::lemma31: {
		auto vars = make_vars({"z", "w"});
		std::vector<PochFactor> fs{
		    {LinearForm{}, {}, 1, {1, ""}},
		    {LinearForm::var("z") + LinearForm::var("w"), {}, 1, {1, ""}},
		    {LinearForm::var("z"), {}, 1, {-1, ""}},
		    {LinearForm::var("w"), {}, 1, {-1, ""}},
		};
		return poch_product(fs, vars, tr, spec.term_budget);
	}
	case TraceSpec::Kind::bloch_okounkov: {
		auto vars = make_vars({"z"});
		std::vector<PochFactor> fs{
		    {LinearForm::var("z"), {}, 1, {1, ""}},
		    {LinearForm{}.add("z", -1), {}, 1, {1, ""}},
		    {LinearForm{}, {}, 1, {-2, ""}},
		};
		return poch_product(fs, vars, tr, spec.term_budget);
	}
	case TraceSpec::Kind::theorem32: {
		if (spec.r < 1)
			throw Error(errc::invalid_argument, "thm32 needs r >= 1");
		std::vector<std::string> names;
		for (int j = 1; j <= spec.r; ++j)
			names.push_back("z" + std::to_string(j));
		for (int j = 1; j < spec.r; ++j)
			names.push_back("w" + std::to_string(j));
		auto vars = make_vars(names);
		/* w_r is the alias z_1 + ... + z_r - w_1 - ... - w_{r-1}. */
		LinearForm w_last;
		for (int j = 1; j <= spec.r; ++j)
			w_last.add("z" + std::to_string(j), 1);
		for (int j = 1; j < spec.r; ++j)
			w_last.add("w" + std::to_string(j), -1);
		std::vector<PochFactor> fs;
		for (int j = 1; j <= spec.r; ++j)
			fs.push_back({LinearForm::var("z" + std::to_string(j)),
			              {}, 1, {1, ""}});
		for (int j = 1; j < spec.r; ++j)
			fs.push_back({LinearForm::var("w" + std::to_string(j)),
			              {}, 1, {-1, ""}});
		fs.push_back({w_last, {}, 1, {-1, ""}});
		return poch_product(fs, vars, tr, spec.term_budget);
	}
	case TraceSpec::Kind::trace_pn: {
		int P = spec.players;
		if (P < 2)
			throw Error(errc::invalid_argument, "pn trace needs N >= 2");
		std::vector<std::string> formal, yvars, expvars;
		for (int i = 1; i <= P; ++i)
			for (int j = i + 1; j <= P; ++j) {
				std::string ij = std::to_string(i) + std::to_string(j);
				formal.push_back("z1_" + ij);
				formal.push_back("z2_" + ij);
				formal.push_back("v1_" + ij);
				formal.push_back("v2_" + ij);
			}
		if (spec.with_ab) {
			for (int i = 1; i <= P; ++i)
				formal.push_back("z" + std::to_string(i));
			for (int i = 1; i <= P; ++i)
				formal.push_back("v" + std::to_string(i));
			formal.push_back("a");
			formal.push_back("b");
			expvars = {"a", "b"};
		}
		for (int i = 1; i <= P; ++i)
			yvars.push_back("y" + std::to_string(i));
		auto vars = make_vars(formal, yvars, expvars);

		std::vector<PochFactor> fs;
		for (int i = 1; i <= P; ++i)
			for (int j = i + 1; j <= P; ++j) {
				std::string ij = std::to_string(i) + std::to_string(j);
				Exponents g(P, 0); // y_{i,j} = y_i^{-1} y_j
				g[i - 1] = -1;
				g[j - 1] = 1;
				Exponents gneg(P, 0);
				gneg[i - 1] = 1;
				gneg[j - 1] = -1;
				LinearForm z1 = LinearForm::var("z1_" + ij);
				LinearForm z2 = LinearForm::var("z2_" + ij);
				LinearForm v1 = LinearForm::var("v1_" + ij);
				LinearForm v2 = LinearForm::var("v2_" + ij);
				fs.push_back({z1 + z2, g, 0, {1, ""}});
				fs.push_back({LinearForm{}, g, 0, {1, ""}});
				fs.push_back({z1, g, 0, {-1, ""}});
				fs.push_back({z2, g, 0, {-1, ""}});
				fs.push_back({v1 + v2, gneg, 1, {1, ""}});
				fs.push_back({LinearForm{}, gneg, 1, {1, ""}});
				fs.push_back({v1, gneg, 1, {-1, ""}});
				fs.push_back({v2, gneg, 1, {-1, ""}});
			}
		if (spec.with_ab) {
			for (int i = 1; i <= P; ++i) {
				Exponents ei(P, 0), eneg(P, 0);
				ei[i - 1] = 1;
				eneg[i - 1] = -1;
				LinearForm zi = LinearForm::var("z" + std::to_string(i));
				LinearForm vi = LinearForm::var("v" + std::to_string(i));
				fs.push_back({zi, ei, 0, {1, "a"}});
				fs.push_back({LinearForm{}, ei, 0, {-1, "a"}});
				fs.push_back({vi, eneg, 1, {1, "b"}});
				fs.push_back({LinearForm{}, eneg, 1, {-1, "b"}});
			}
		}
		return poch_product(fs, vars, tr, spec.term_budget);
	}
	}
	throw Error(errc::internal, "unreachable trace kind");
}

RingElement y0_coefficient(const RingElement &p)
{
	if (p.saturated() && p.trunc().y_bound < p.trunc().q_order)
		throw Error(errc::saturated,
		            "y-saturation may have dropped contributing terms; "
		            "rebuild with y-bound >= q-order");
	return p.y0_raw();
}

} // namespace qzk
