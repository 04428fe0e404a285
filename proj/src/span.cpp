#include "span.hpp"

#include "products.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace qzk {

namespace {

void check_budget(size_t n, long long budget)
{
	if (static_cast<long long>(n) > budget)
		throw Error(errc::budget, "basis element budget exceeded");
}

/* Compositions of w into parts >= minpart, in lexicographic order. */
void compositions_of(int w, int minpart,
                     const std::function<void(const std::vector<int> &)> &cb)
{
	std::vector<int> parts;
	std::function<void(int)> rec = [&](int left) {
		if (left == 0) {
			cb(parts);
			return;
		}
		for (int p = minpart; p <= left; ++p) {
			parts.push_back(p);
			rec(left - p);
			parts.pop_back();
		}
	};
	rec(w);
}

std::vector<BasisElement> bracket_family(bool need_s1_gt1, int max_weight,
                                         int order, long long budget)
{
	std::vector<BasisElement> out;
	out.push_back({"1", 0, QSeries::one(order)});
	for (int w = 1; w <= max_weight; ++w) {
		compositions_of(w, 1, [&](const std::vector<int> &s) {
			if (need_s1_gt1 && s.front() <= 1)
				return;
			BracketIndex idx{s};
			out.push_back({idx.label(), w, bracket(idx, order)});
			check_budget(out.size(), budget);
		});
	}
	return out;
}

std::vector<BasisElement> bibracket_family(bool need_s1_gt1, int max_weight,
                                           int order, long long budget)
{
	std::vector<BasisElement> out;
	out.push_back({"1", 0, QSeries::one(order)});
	for (int w = 1; w <= max_weight; ++w) {
		/* Split the weight as |s| + |r| per depth. */
		for (int depth = 1; depth <= w; ++depth) {
			std::vector<int> s(depth), r(depth);
			std::function<void(int, int)> rec_s = [&](int i, int left) {
				if (i == depth) {
					std::function<void(int, int)> rec_r =
					    [&](int j, int rleft) {
						    if (j == depth) {
							    if (rleft != 0)
								    return;
							    BiBracketIndex idx{s, r};
							    out.push_back(
							        {idx.label(), w,
							         bibracket(idx, order)});
							    check_budget(out.size(),
							                 budget);
							    return;
						    }
						    for (int v = 0; v <= rleft; ++v) {
							    r[j] = v;
							    rec_r(j + 1, rleft - v);
						    }
					    };
					rec_r(0, left);
					return;
				}
				int lo = (i == 0 && need_s1_gt1) ? 2 : 1;
				/* Leave at least 1 per remaining s-slot. */
				for (int v = lo; v <= left - (depth - 1 - i); ++v) {
					s[i] = v;
					rec_s(i + 1, left - v);
				}
			};
			rec_s(0, w);
		}
	}
	return out;
}

struct Generator {
	std::string label;
	int weight;
	QSeries series;
};

std::vector<BasisElement> monomial_family(const std::vector<Generator> &gens,
                                          int max_weight, int order,
                                          long long budget)
{
	std::vector<BasisElement> out;
	std::vector<int> powers(gens.size(), 0);
	std::function<void(size_t, int, QSeries, std::string)> rec =
	    [&](size_t i, int weight, QSeries prod, std::string label) {
		    if (i == gens.size()) {
			    out.push_back({label.empty() ? "1" : label, weight,
			                   std::move(prod)});
			    check_budget(out.size(), budget);
			    return;
		    }
		    QSeries acc = prod;
		    for (int p = 0;; ++p) {
			    int w = weight + p * gens[i].weight;
			    if (w > max_weight)
				    break;
			    std::string l = label;
			    if (p > 0) {
				    if (!l.empty())
					    l += "*";
				    l += gens[i].label;
				    if (p > 1)
					    l += "^" + std::to_string(p);
			    }
			    rec(i + 1, w, acc, l);
			    acc = acc * gens[i].series;
		    }
	    };
	rec(0, 0, QSeries::one(order), "");
	std::stable_sort(out.begin(), out.end(),
	                 [](const BasisElement &a, const BasisElement &b) {
		                 if (a.weight != b.weight)
			                 return a.weight < b.weight;
		                 return a.label < b.label;
	                 });
	return out;
}

} // namespace

std::vector<BasisElement> enumerate_basis(Family f, int max_weight, int order,
                                          long long element_budget)
{
	if (max_weight < 0)
		throw Error(errc::invalid_argument, "negative weight bound");
	switch (f) {
	case Family::MD:
		return bracket_family(false, max_weight, order, element_budget);
	case Family::qMD:
		return bracket_family(true, max_weight, order, element_budget);
	case Family::BD:
		return bibracket_family(false, max_weight, order, element_budget);
	case Family::qBD:
		return bibracket_family(true, max_weight, order, element_budget);
	case Family::qMZV: {
		/* The family equals the span of the brackets with all entries
		 * >= 2, and that presentation carries the weight grading the
		 * theorems use (the Okounkov generators mix weights: Z(4)
		 * equals [4] - [2]/6). The spanning set is the monomials in
		 * these generators. */
		std::vector<Generator> gens;
		for (int w = 2; w <= max_weight; ++w) {
			compositions_of(w, 2, [&](const std::vector<int> &s) {
				BracketIndex idx{s};
				gens.push_back({idx.label(), w, bracket(idx, order)});
			});
		}
		return monomial_family(gens, max_weight, order, element_budget);
	}
	case Family::QM: {
		std::vector<Generator> gens{
		    {"G2", 2, eisenstein(2, order)},
		    {"G4", 4, eisenstein(4, order)},
		    {"G6", 6, eisenstein(6, order)},
		};
		if (max_weight < 2)
			gens.clear();
		return monomial_family(gens, max_weight, order, element_budget);
	}
	}
	throw Error(errc::internal, "unreachable family");
}

std::vector<BasisElement> weight_slice(const std::vector<BasisElement> &basis, int w)
{
	std::vector<BasisElement> out;
	for (const auto &b : basis)
		if (b.weight == w)
			out.push_back(b);
	return out;
}

std::string SpanCertificate::to_json() const
{
	nlohmann::json j;
	j["status"] = member ? "member" : "refuted_at_order";
	j["order"] = order;
	j["underdetermined"] = underdetermined;
	auto &c = j["coords"] = nlohmann::json::object();
	for (const auto &[label, v] : coords)
		c[label] = rat_str(v);
	if (!member)
		j["residual"] = nlohmann::json::parse(residual.to_json());
	return j.dump();
}

SpanCertificate express(const QSeries &target,
                        const std::vector<BasisElement> &basis, int order)
{
	if (target.order() < order)
		throw Error(errc::invalid_argument,
		            "target not expanded to the requested order");
	size_t m = basis.size();
	for (const auto &b : basis)
		if (b.series.order() < order)
			throw Error(errc::invalid_argument,
			            "basis element not expanded to the requested "
			            "order: " + b.label);

	size_t rows = static_cast<size_t>(order) + 1;
	std::vector<std::vector<Rational>> M(rows,
	                                     std::vector<Rational>(m + 1, Rational(0)));
	for (size_t r = 0; r < rows; ++r) {
		for (size_t c = 0; c < m; ++c)
			M[r][c] = basis[c].series[static_cast<int>(r)];
		M[r][m] = target[static_cast<int>(r)];
	}

	/* Gauss-Jordan; pivots are the first nonzero entry in basis order,
	 * which keeps certificates deterministic. */
	std::vector<size_t> pivot_col;
	size_t rank = 0;
	for (size_t c = 0; c < m && rank < rows; ++c) {
		size_t pr = rank;
		while (pr < rows && M[pr][c] == 0)
			++pr;
		if (pr == rows)
			continue;
		std::swap(M[rank], M[pr]);
		Rational inv = 1 / M[rank][c];
		for (size_t j = c; j <= m; ++j)
			M[rank][j] *= inv;
		for (size_t r = 0; r < rows; ++r) {
			if (r == rank || M[r][c] == 0)
				continue;
			Rational f = M[r][c];
			for (size_t j = c; j <= m; ++j)
				M[r][j] -= f * M[rank][j];
		}
		pivot_col.push_back(c);
		++rank;
	}

	SpanCertificate cert;
	cert.order = order;
	cert.underdetermined = static_cast<size_t>(order) < m;
	bool consistent = true;
	for (size_t r = rank; r < rows; ++r)
		if (M[r][m] != 0)
			consistent = false;

	std::vector<Rational> x(m, Rational(0));
	for (size_t r = 0; r < rank; ++r)
		x[pivot_col[r]] = M[r][m];
	QSeries combo(order);
	for (size_t c = 0; c < m; ++c) {
		if (x[c] == 0)
			continue;
		combo += basis[c].series.truncated(order) * x[c];
		cert.coords.emplace(basis[c].label, x[c]);
	}
	cert.residual = target.truncated(order) - combo;
	cert.member = consistent;
	if (consistent && !cert.residual.is_zero())
		throw Error(errc::internal, "express produced a nonzero residual "
		                            "for a member");
	return cert;
}

std::vector<std::map<std::string, Rational>>
find_relations(const std::vector<BasisElement> &basis, int order)
{
	size_t m = basis.size();
	size_t rows = static_cast<size_t>(order) + 1;
	std::vector<std::vector<Rational>> M(rows,
	                                     std::vector<Rational>(m, Rational(0)));
	for (size_t r = 0; r < rows; ++r)
		for (size_t c = 0; c < m; ++c)
			M[r][c] = basis[c].series[static_cast<int>(r)];

	std::vector<size_t> pivot_col;
	std::vector<bool> is_pivot(m, false);
	size_t rank = 0;
	for (size_t c = 0; c < m && rank < rows; ++c) {
		size_t pr = rank;
		while (pr < rows && M[pr][c] == 0)
			++pr;
		if (pr == rows)
			continue;
		std::swap(M[rank], M[pr]);
		Rational inv = 1 / M[rank][c];
		for (size_t j = c; j < m; ++j)
			M[rank][j] *= inv;
		for (size_t r = 0; r < rows; ++r) {
			if (r == rank || M[r][c] == 0)
				continue;
			Rational f = M[r][c];
			for (size_t j = c; j < m; ++j)
				M[r][j] -= f * M[rank][j];
		}
		pivot_col.push_back(c);
		is_pivot[c] = true;
		++rank;
	}

	std::vector<std::map<std::string, Rational>> kernel;
	for (size_t f = 0; f < m; ++f) {
		if (is_pivot[f])
			continue;
		std::vector<Rational> v(m, Rational(0));
		v[f] = 1;
		for (size_t r = 0; r < rank; ++r)
			v[pivot_col[r]] = -M[r][f];
		/* Integer-normalize: clear denominators, divide by the gcd,
		 * make the first nonzero entry positive. */
		mpz_class lcm(1);
		for (const auto &x : v)
			if (x != 0)
				mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
				        x.get_den().get_mpz_t());
		mpz_class gcd(0);
		for (auto &x : v) {
			x *= Rational(lcm);
			mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(),
			        x.get_num().get_mpz_t());
		}
		if (gcd != 0)
			for (auto &x : v)
				x /= Rational(gcd);
		for (const auto &x : v) {
			if (x == 0)
				continue;
			if (x < 0)
				for (auto &y : v)
					y = -y;
			break;
		}
		std::map<std::string, Rational> rel;
		for (size_t c = 0; c < m; ++c)
			if (v[c] != 0)
				rel.emplace(basis[c].label, v[c]);
		kernel.push_back(std::move(rel));
	}
	return kernel;
}

/* ---------------- weighted-membership verification ---------------- */

namespace {

struct BasisCache {
	Family family;
	WeightRule rule;
	int order; // <= 0: auto per weight
	std::map<int, std::vector<BasisElement>> by_weight;
	std::map<int, int> order_by_weight;

	const std::vector<BasisElement> &get(int w, int &used_order)
	{
		auto it = by_weight.find(w);
		if (it != by_weight.end()) {
			used_order = order_by_weight[w];
			return it->second;
		}
		/* Enumerate twice when the order is automatic: sizes first. */
		int n = order;
		if (n <= 0) {
			auto probe = enumerate_basis(family, w, 24);
			size_t size = rule == WeightRule::exact
			                  ? weight_slice(probe, w).size()
			                  : probe.size();
			n = 2 * static_cast<int>(size) + 10;
		}
		auto full = enumerate_basis(family, w, n);
		auto basis = rule == WeightRule::exact ? weight_slice(full, w)
		                                       : full;
		order_by_weight[w] = n;
		used_order = n;
		return by_weight.emplace(w, std::move(basis)).first->second;
	}
};

void enumerate_ordinary_monomials(const VarTable &vars, int degree,
                                  const std::function<void(const Exponents &)> &cb)
{
	std::vector<int> ordinary;
	for (size_t i = 0; i < vars.formal.size(); ++i)
		if (!vars.is_exponent[i])
			ordinary.push_back(static_cast<int>(i));
	Exponents fexp(vars.formal.size(), 0);
	std::function<void(size_t, int)> rec = [&](size_t i, int left) {
		if (i == ordinary.size()) {
			cb(fexp);
			return;
		}
		for (int e = 0; e <= left; ++e) {
			fexp[ordinary[i]] = e;
			rec(i + 1, left - e);
		}
		fexp[ordinary[i]] = 0;
	};
	rec(0, degree);
}

} // namespace

VerifyReport verify_weighted_membership(const RingElement &p, Family f,
                                        WeightRule rule, int order)
{
	Exponents yzero(p.vars()->y.size(), 0);
	for (const auto &[fexp, layer] : p.terms())
		for (const auto &[yexp, c] : layer.terms())
			if (yexp != yzero)
				throw Error(errc::invalid_argument,
				            "element still has y-content; apply the "
				            "y0 coefficient first");

	VerifyReport report;
	report.name = family_name(f) + std::string(rule == WeightRule::exact
	                                               ? "/exact"
	                                               : "/at-most");
	report.degree = p.trunc().degree;
	BasisCache cache{f, rule, std::min(order, p.trunc().q_order), {}, {}};
	if (order > p.trunc().q_order)
		throw Error(errc::invalid_argument,
		            "requested certificate order exceeds the element's "
		            "q-order");

	report.passed = true;
	enumerate_ordinary_monomials(*p.vars(), p.trunc().degree, [&](const Exponents &base) {
		int w = p.ordinary_degree(base);
		/* Gather the stored indices whose ordinary part matches;
		 * exponent-class variables split the coefficient into a
		 * polynomial in a, b. */
		std::vector<Exponents> variants;
		for (const auto &[fexp, layer] : p.terms()) {
			bool match = true;
			for (size_t i = 0; i < fexp.size(); ++i) {
				bool exp_class = p.vars()->is_exponent[i];
				if (!exp_class && fexp[i] != base[i])
					match = false;
			}
			if (match)
				variants.push_back(fexp);
		}
		if (variants.empty())
			variants.push_back(base);
		for (const auto &fexp : variants) {
			MonomialCheck item;
			item.fexp = fexp;
			item.monomial = p.monomial_string(fexp);
			item.weight = w;
			item.ab_degree = p.exponent_degree(fexp);
			int used_order = 0;
			const auto &basis = cache.get(w, used_order);
			int n = std::min(used_order, p.trunc().q_order);
			QSeries target = p.coeff_y0(fexp).truncated(n);
			item.cert = express(target, basis, n);
			item.ok = item.cert.member;
			report.passed = report.passed && item.ok;
			report.items.push_back(std::move(item));
		}
	});
	report.order = order;
	return report;
}

/* ---------------- theorem drivers ---------------- */

namespace {

void append_report(VerifyReport &dst, const VerifyReport &src)
{
	for (const auto &it : src.items)
		dst.items.push_back(it);
	dst.passed = dst.passed && src.passed;
}

} // namespace

VerifyReport verify_theorem(const std::string &name, int order, int degree,
                            long long term_budget)
{
	VerifyReport report;
	report.name = name;
	report.passed = true;

	auto head = name.substr(0, name.find(':'));
	if (head == "lemma31" || head == "thm32" || head == "bo") {
		TraceSpec spec = parse_trace_spec(name);
		if (order > 0)
			spec.q_order = order;
		if (degree > 0)
			spec.degree = degree;
		spec.term_budget = term_budget;
		RingElement trace = build_trace(spec);
		report.order = spec.q_order;
		report.degree = spec.degree;

		/* Constant term 1. */
		MonomialCheck constant;
		constant.monomial = "1";
		constant.fexp = Exponents(trace.vars()->formal.size(), 0);
		constant.ok = trace.coeff_y0(constant.fexp) ==
		              QSeries::one(spec.q_order);
		constant.note = "constant term equals 1";
		constant.cert.order = spec.q_order;
		constant.cert.member = constant.ok;
		report.passed = report.passed && constant.ok;
		report.items.push_back(std::move(constant));

		if (head == "bo") {
			/* Parity: odd powers of z vanish. */
			for (int d = 1; d <= spec.degree; d += 2) {
				MonomialCheck item;
				item.fexp = {d};
				item.monomial = trace.monomial_string(item.fexp);
				item.weight = d;
				item.ok = trace.coeff_y0(item.fexp).is_zero();
				item.note = "odd coefficient vanishes";
				item.cert.order = spec.q_order;
				item.cert.member = item.ok;
				report.passed = report.passed && item.ok;
				report.items.push_back(std::move(item));
			}
			return report;
		}
		auto sub = verify_weighted_membership(trace, Family::qMZV,
		                                      WeightRule::exact,
		                                      spec.q_order);
		append_report(report, sub);
		return report;
	}
	if (head == "thm45") {
		TraceSpec spec = parse_trace_spec("pn:2");
		spec.degree = degree > 0 ? degree : 4;
		int auto_order = 0;
		{
			auto probe = enumerate_basis(Family::qBD, spec.degree, 24);
			auto_order = static_cast<int>(probe.size()) + 10;
		}
		spec.q_order = order > 0 ? order : auto_order;
		spec.term_budget = term_budget;
		RingElement y0 = y0_coefficient(build_trace(spec));
		report.order = spec.q_order;
		report.degree = spec.degree;

		auto sub = verify_weighted_membership(y0, Family::qBD,
		                                      WeightRule::at_most,
		                                      spec.q_order);
		append_report(report, sub);

		/* The z1 z2 v1 v2 coefficient has the closed form
		 * 2 * [3|1] coming from the single-constraint sum. */
		if (spec.degree >= 4) {
			MonomialCheck item;
			item.fexp = y0.parse_monomial("z1_12*z2_12*v1_12*v2_12");
			item.monomial = "z1_12*z2_12*v1_12*v2_12";
			item.weight = 4;
			QSeries got = y0.coeff_y0(item.fexp);
			QSeries want = bibracket(BiBracketIndex{{3}, {1}},
			                         spec.q_order) * Rational(2);
			item.ok = got == want;
			item.note = "equals 2*[3|1]";
			item.cert.order = spec.q_order;
			item.cert.member = item.ok;
			report.passed = report.passed && item.ok;
			report.items.push_back(std::move(item));
		}
		return report;
	}
	if (head == "thm54") {
		auto colon = name.find(':');
		int players = colon == std::string::npos
		                  ? 2
		                  : std::stoi(name.substr(colon + 1));
		TraceSpec spec = parse_trace_spec("pn:" + std::to_string(players));
		spec.with_ab = true;
		spec.degree = degree > 0 ? degree : 3;
		spec.q_order = order > 0 ? order : 10;
		spec.term_budget = term_budget;
		RingElement y0 = y0_coefficient(build_trace(spec));
		report.order = spec.q_order;
		report.degree = spec.degree;

		auto sub = verify_weighted_membership(y0, Family::BD,
		                                      WeightRule::at_most,
		                                      spec.q_order);
		/* The a,b-degree is bounded by the degree in the unpaired
		 * variables z_i, v_i (names without an underscore). */
		for (auto &item : sub.items) {
			int single_deg = 0;
			for (size_t i = 0; i < item.fexp.size(); ++i) {
				const std::string &nm = y0.vars()->formal[i];
				if (!y0.vars()->is_exponent[i] &&
				    nm.find('_') == std::string::npos)
					single_deg += item.fexp[i];
			}
			if (item.ab_degree > single_deg) {
				item.ok = false;
				item.note = "a,b-degree exceeds the unpaired-variable degree";
				sub.passed = false;
			}
		}
		append_report(report, sub);
		return report;
	}
	throw Error(errc::invalid_argument, "unknown theorem: " + name);
}

std::string VerifyReport::to_json() const
{
	nlohmann::json j;
	j["theorem"] = name;
	j["order"] = order;
	j["degree"] = degree;
	j["passed"] = passed;
	auto &arr = j["items"] = nlohmann::json::array();
	for (const auto &it : items) {
		nlohmann::json ji;
		ji["monomial"] = it.monomial;
		ji["weight"] = it.weight;
		ji["ab_degree"] = it.ab_degree;
		ji["ok"] = it.ok;
		if (!it.note.empty())
			ji["note"] = it.note;
		ji["certificate"] = nlohmann::json::parse(it.cert.to_json());
		arr.push_back(std::move(ji));
	}
	return j.dump();
}

std::string VerifyReport::to_text() const
{
	std::ostringstream os;
	os << (passed ? "PASS" : "FAIL") << " " << name << " (order " << order
	   << ", degree " << degree << ", " << items.size() << " checks)\n";
	for (const auto &it : items) {
		os << "  " << (it.ok ? "ok  " : "FAIL") << " " << it.monomial
		   << "  weight " << it.weight;
		if (it.ab_degree > 0)
			os << "  ab-degree " << it.ab_degree;
		if (!it.note.empty())
			os << "  [" << it.note << "]";
		if (it.ok && !it.cert.coords.empty()) {
			os << "  = ";
			bool first = true;
			for (const auto &[label, c] : it.cert.coords) {
				if (!first)
					os << " + ";
				first = false;
				os << rat_str(c) << "*" << label;
			}
		}
		os << "\n";
	}
	return os.str();
}

} // namespace qzk
