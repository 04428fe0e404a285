#include "reduction.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <mutex>

namespace qzk {

NPoly faulhaber(int t)
{
	if (t < 0)
		throw Error(errc::invalid_argument, "faulhaber needs t >= 0");
	static std::mutex mtx;
	static std::map<int, NPoly> cache;
	std::lock_guard lock(mtx);
	auto it = cache.find(t);
	if (it != cache.end())
		return it->second;
	/* S_t(n) = n^t + (1/(t+1)) sum_{j<=t} C(t+1,j) B_j n^{t+1-j}, with
	 * the B_1 = -1/2 series convention; the j-sum alone gives
	 * sum_{k=0}^{n-1} k^t which counts k = 0 once when t = 0. */
	NPoly p = Poly::monomial(t, Rational(1));
	for (int j = 0; j <= t; ++j) {
		Rational c = binomial(t + 1, j) * bernoulli(j) / (t + 1);
		if (c != 0)
			p += Poly::monomial(t + 1 - j, c);
	}
	if (t == 0)
		p -= Poly(Rational(1));
	if (p.coeff(0) != 0)
		throw Error(errc::internal, "faulhaber polynomial has a constant term");
	cache.emplace(t, p);
	return p;
}

namespace {

/* sum_{d=1}^{n} d^t * P(n-d) as a polynomial in n, assuming the
 * polynomial identity is wanted for n >= 0; the caller corrects for
 * P(0) != 0 separately. */
NPoly sum_convolve(const NPoly &p, int t)
{
	NPoly out;
	for (int a = 0; a <= p.degree(); ++a) {
		Rational c = p.coeff(a);
		if (c == 0)
			continue;
		for (int j = 0; j <= a; ++j) {
			Rational coef = c * binomial(a, j);
			if (j % 2)
				coef = -coef;
			/* n^{a-j} * S_{t+j}(n) */
			NPoly s = faulhaber(t + j);
			NPoly shifted;
			for (int k = 0; k <= s.degree(); ++k)
				if (s.coeff(k) != 0)
					shifted += Poly::monomial(k + a - j,
					                          s.coeff(k) * coef);
			out += shifted;
		}
	}
	return out;
}

} // namespace

NPoly composition_power_sum(const std::vector<int> &ts)
{
	if (ts.empty())
		throw Error(errc::invalid_argument, "composition sum needs r >= 1");
	for (int t : ts)
		if (t < 0)
			throw Error(errc::invalid_argument, "negative power");
	NPoly b = Poly::monomial(ts[0], Rational(1));
	for (size_t k = 1; k < ts.size(); ++k) {
		NPoly next = sum_convolve(b, ts[k]);
		/* Drop the spurious d = n term (which used P(0)). */
		if (b.coeff(0) != 0)
			next -= Poly::monomial(ts[k], b.coeff(0));
		b = next;
	}
	return b;
}

NPoly power_sum_eq(const std::vector<int> &ts)
{
	if (ts.empty())
		throw Error(errc::invalid_argument, "power sum needs r >= 1");
	for (int t : ts)
		if (t < 1)
			throw Error(errc::invalid_argument,
			            "power_sum_eq needs every t >= 1");
	NPoly p = composition_power_sum(ts);
	int expect = static_cast<int>(ts.size()) - 1;
	for (int t : ts)
		expect += t;
	if (p.degree() != expect || p.coeff(0) != 0)
		throw Error(errc::internal, "power_sum_eq shape check failed");
	return p;
}

NPoly power_sum_le(const std::vector<int> &ts)
{
	if (ts.empty())
		throw Error(errc::invalid_argument, "power sum needs r >= 1");
	for (int t : ts)
		if (t < 1)
			throw Error(errc::invalid_argument,
			            "power_sum_le needs every t >= 1");
	NPoly a = faulhaber(ts[0]);
	for (size_t k = 1; k < ts.size(); ++k)
		a = sum_convolve(a, ts[k]); // a(0) = 0 keeps this exact
	int expect = static_cast<int>(ts.size());
	for (int t : ts)
		expect += t;
	if (a.degree() != expect || a.coeff(0) != 0)
		throw Error(errc::internal, "power_sum_le shape check failed");
	return a;
}

/* ---------------- SumSpec JSON ---------------- */

static const char *cmp_name(SumSpec::Cmp c)
{
	switch (c) {
	case SumSpec::Cmp::none: return "none";
	case SumSpec::Cmp::eq: return "eq";
	case SumSpec::Cmp::lt: return "lt";
	case SumSpec::Cmp::gt: return "gt";
	}
	return "?";
}

std::string SumSpec::to_json() const
{
	nlohmann::json j;
	j["constraint"] = cmp_name(cmp);
	auto &arr = j["chains"] = nlohmann::json::array();
	for (const auto &c : chains) {
		nlohmann::json jc;
		jc["low"] = c.low;
		jc["strict"] = c.strict;
		if (c.group == 0)
			jc["group"] = "A";
		else if (c.group == 1)
			jc["group"] = "B";
		else
			jc["group"] = nullptr;
		auto &vars = jc["vars"] = nlohmann::json::array();
		for (const auto &v : c.vars)
			vars.push_back({{"u", v.u}, {"t", v.t}});
		arr.push_back(std::move(jc));
	}
	return j.dump();
}

SumSpec SumSpec::from_json(const std::string &text)
{
	nlohmann::json j = nlohmann::json::parse(text);
	SumSpec s;
	std::string c = j.value("constraint", "none");
	if (c == "none")
		s.cmp = Cmp::none;
	else if (c == "eq")
		s.cmp = Cmp::eq;
	else if (c == "lt")
		s.cmp = Cmp::lt;
	else if (c == "gt")
		s.cmp = Cmp::gt;
	else
		throw Error(errc::invalid_argument, "unknown constraint: " + c);
	for (const auto &jc : j.at("chains")) {
		Chain chain;
		chain.low = jc.value("low", 1);
		chain.strict = jc.value("strict", true);
		if (chain.low != 0 && chain.low != 1)
			throw Error(errc::invalid_argument, "chain low must be 0 or 1");
		if (jc.contains("group") && !jc["group"].is_null()) {
			std::string g = jc["group"].get<std::string>();
			if (g == "A")
				chain.group = 0;
			else if (g == "B")
				chain.group = 1;
			else
				throw Error(errc::invalid_argument,
				            "chain group must be A or B");
		}
		for (const auto &jv : jc.at("vars")) {
			ChainVar v{jv.value("u", 0), jv.value("t", 0)};
			if (v.u < 0 || v.t < 0)
				throw Error(errc::invalid_argument,
				            "negative chain exponent");
			chain.vars.push_back(v);
		}
		s.chains.push_back(std::move(chain));
	}
	return s;
}

/* ---------------- brute-force oracle ---------------- */

namespace {

Rational int_pow(long base, int e)
{
	Rational p(1);
	for (int k = 0; k < e; ++k)
		p *= base;
	return p;
}

struct Evaluator {
	const SumSpec &spec;
	QSeries out;
	long long budget;
	long long visits = 0;

	Evaluator(const SumSpec &s, int order, long long b)
	    : spec(s), out(order), budget(b)
	{}

	void bump()
	{
		if (++visits > budget)
			throw Error(errc::budget, "sum enumeration budget exceeded");
	}

	void leaf(int used, long sumA, long sumB, const Rational &coeff)
	{
		switch (spec.cmp) {
		case SumSpec::Cmp::none: break;
		case SumSpec::Cmp::eq:
			if (sumA != sumB)
				return;
			break;
		case SumSpec::Cmp::lt:
			if (!(sumA < sumB))
				return;
			break;
		case SumSpec::Cmp::gt:
			if (!(sumA > sumB))
				return;
			break;
		}
		out.add_to(used, coeff);
	}

	void run(size_t ci, size_t vi, int prev, int used, long sumA, long sumB,
	         const Rational &coeff)
	{
		if (ci == spec.chains.size()) {
			leaf(used, sumA, sumB, coeff);
			return;
		}
		const Chain &chain = spec.chains[ci];
		if (vi == chain.vars.size()) {
			run(ci + 1, 0, -1, used, sumA, sumB, coeff);
			return;
		}
		const ChainVar &var = chain.vars[vi];
		int budget_q = out.order() - used;
		int hi = chain.strict ? std::min(prev < 0 ? budget_q : prev - 1,
		                                 budget_q)
		                      : budget_q;
		for (int n = chain.low; n <= hi; ++n) {
			Rational ncoeff = coeff * int_pow(n, var.u);
			if (n == 0) {
				/* q-free level: d is bounded only through the
				 * constraint (callers validated that this is
				 * possible). */
				for (int d = 1; d <= out.order(); ++d) {
					bump();
					long a = sumA, b = sumB;
					if (chain.group == 0)
						a += d;
					else if (chain.group == 1)
						b += d;
					run(ci, vi + 1, 0, used, a, b,
					    ncoeff * int_pow(d, var.t));
				}
				continue;
			}
			for (int d = 1; n * d <= budget_q; ++d) {
				bump();
				long a = sumA, b = sumB;
				if (chain.group == 0)
					a += d;
				else if (chain.group == 1)
					b += d;
				run(ci, vi + 1, n, used + n * d, a, b,
				    ncoeff * int_pow(d, var.t));
			}
		}
	}
};

} // namespace

QSeries sumspec_eval(const SumSpec &spec, int order, long long tuple_budget)
{
	bool zero_possible[2] = {false, false};
	for (const auto &c : spec.chains) {
		if (c.low != 0 && c.low != 1)
			throw Error(errc::invalid_argument, "chain low must be 0 or 1");
		for (const auto &v : c.vars)
			if (v.u < 0 || v.t < 0)
				throw Error(errc::invalid_argument,
				            "negative chain exponent");
		if (c.low == 0 && !c.vars.empty() && c.group >= 0)
			zero_possible[c.group] = true;
	}
	for (const auto &c : spec.chains) {
		if (c.low != 0 || c.vars.empty())
			continue;
		bool bounded = false;
		if (c.group == 0)
			bounded = (spec.cmp == SumSpec::Cmp::eq ||
			           spec.cmp == SumSpec::Cmp::lt) &&
			          !zero_possible[1];
		else if (c.group == 1)
			bounded = (spec.cmp == SumSpec::Cmp::eq ||
			           spec.cmp == SumSpec::Cmp::gt) &&
			          !zero_possible[0];
		if (!bounded)
			throw Error(errc::budget,
			            "zero-bound variables cannot be bounded "
			            "through the constraint");
	}
	Evaluator ev(spec, order, tuple_budget);
	ev.run(0, 0, -1, 0, 0, 0, Rational(1));
	return ev.out;
}

/* ---------------- ordering decomposition ---------------- */

namespace {

/* Ordered set partitions of {0..r-1}; blocks listed in strictly
 * descending value order. */
void ordered_partitions(std::vector<int> remaining,
                        std::vector<std::vector<int>> &blocks,
                        const std::function<void(const std::vector<std::vector<int>> &)> &cb)
{
	if (remaining.empty()) {
		cb(blocks);
		return;
	}
	int r = static_cast<int>(remaining.size());
	for (unsigned mask = 1; mask < (1u << r); ++mask) {
		std::vector<int> block, rest;
		for (int i = 0; i < r; ++i) {
			if (mask & (1u << i))
				block.push_back(remaining[i]);
			else
				rest.push_back(remaining[i]);
		}
		blocks.push_back(std::move(block));
		ordered_partitions(rest, blocks, cb);
		blocks.pop_back();
	}
}

struct ChainVariant {
	Rational coeff;
	Chain chain;
};

std::vector<ChainVariant> decompose_chain(const Chain &c)
{
	if (c.strict || c.vars.size() <= 1) {
		Chain out = c;
		out.strict = true;
		return {{Rational(1), std::move(out)}};
	}
	std::vector<ChainVariant> result;
	std::vector<int> positions(c.vars.size());
	for (size_t i = 0; i < positions.size(); ++i)
		positions[i] = static_cast<int>(i);
	std::vector<std::vector<int>> blocks;
	ordered_partitions(positions, blocks, [&](const std::vector<std::vector<int>> &bs) {
		/* Per block: merged u is the block sum; merged t runs over the
		 * monomials of the block's composition power-sum polynomial. */
		struct BlockData {
			int u = 0;
			NPoly poly;
		};
		std::vector<BlockData> data;
		for (const auto &b : bs) {
			BlockData d;
			std::vector<int> ts;
			for (int i : b) {
				d.u += c.vars[i].u;
				ts.push_back(c.vars[i].t);
			}
			d.poly = composition_power_sum(ts);
			data.push_back(std::move(d));
		}
		std::vector<int> pick(data.size(), 0);
		std::function<void(size_t, Rational)> walk = [&](size_t j, Rational coeff) {
			if (j == data.size()) {
				Chain out;
				out.low = c.low;
				out.strict = true;
				out.group = c.group;
				for (size_t k = 0; k < data.size(); ++k)
					out.vars.push_back(
					    ChainVar{data[k].u, pick[k]});
				result.push_back({coeff, std::move(out)});
				return;
			}
			for (int p = 0; p <= data[j].poly.degree(); ++p) {
				Rational cp = data[j].poly.coeff(p);
				if (cp == 0)
					continue;
				pick[j] = p;
				walk(j + 1, coeff * cp);
			}
		};
		walk(0, Rational(1));
	});
	return result;
}

} // namespace

std::vector<std::pair<Rational, SumSpec>> order_decompose(const SumSpec &spec)
{
	std::vector<std::vector<ChainVariant>> per_chain;
	for (const auto &c : spec.chains)
		per_chain.push_back(decompose_chain(c));
	std::vector<std::pair<Rational, SumSpec>> out;
	std::vector<size_t> pick(per_chain.size(), 0);
	std::function<void(size_t, Rational, SumSpec)> walk =
	    [&](size_t i, Rational coeff, SumSpec acc) {
		    if (i == per_chain.size()) {
			    acc.cmp = spec.cmp;
			    out.emplace_back(std::move(coeff), std::move(acc));
			    return;
		    }
		    for (const auto &variant : per_chain[i]) {
			    SumSpec next = acc;
			    next.chains.push_back(variant.chain);
			    walk(i + 1, coeff * variant.coeff, std::move(next));
		    }
	    };
	walk(0, Rational(1), SumSpec{});
	return out;
}

/* ---------------- bi-bracket combinations ---------------- */

void BiBracketCombination::add(const Rational &c, Key key)
{
	if (c == 0)
		return;
	std::sort(key.begin(), key.end());
	auto it = terms_.find(key);
	if (it == terms_.end()) {
		terms_.emplace(std::move(key), c);
	} else {
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

void BiBracketCombination::add_single(const Rational &c, BiBracketIndex idx)
{
	if (idx.s.empty()) {
		add_constant(c);
		return;
	}
	add(c, {std::move(idx)});
}

void BiBracketCombination::add_product(const Rational &c, BiBracketIndex a, BiBracketIndex b)
{
	if (a.s.empty()) {
		add_single(c, std::move(b));
		return;
	}
	if (b.s.empty()) {
		add_single(c, std::move(a));
		return;
	}
	add(c, {std::move(a), std::move(b)});
}

BiBracketCombination &BiBracketCombination::operator+=(const BiBracketCombination &o)
{
	for (const auto &[key, c] : o.terms_)
		add(c, key);
	return *this;
}

BiBracketCombination &BiBracketCombination::operator*=(const Rational &c)
{
	if (c == 0) {
		terms_.clear();
		return *this;
	}
	for (auto &[key, v] : terms_)
		v *= c;
	return *this;
}

QSeries BiBracketCombination::evaluate(int order) const
{
	QSeries out(order);
	for (const auto &[key, c] : terms_) {
		QSeries term = QSeries::constant(c, order);
		for (const auto &idx : key)
			term = term * bibracket(idx, order);
		out += term;
	}
	return out;
}

int BiBracketCombination::max_weight() const
{
	int w = 0;
	for (const auto &[key, c] : terms_) {
		int kw = 0;
		for (const auto &idx : key)
			kw += idx.weight();
		w = std::max(w, kw);
	}
	return w;
}

bool BiBracketCombination::all_qbd() const
{
	for (const auto &[key, c] : terms_)
		for (const auto &idx : key)
			if (!idx.in_qbd())
				return false;
	return true;
}

std::string BiBracketCombination::to_json() const
{
	nlohmann::json j;
	auto &arr = j["terms"] = nlohmann::json::array();
	for (const auto &[key, c] : terms_) {
		nlohmann::json jt;
		jt["coeff"] = rat_str(c);
		auto &fs = jt["factors"] = nlohmann::json::array();
		for (const auto &idx : key)
			fs.push_back({{"s", idx.s}, {"r", idx.r}});
		arr.push_back(std::move(jt));
	}
	return j.dump();
}

/* ---------------- the elimination recursion ---------------- */

namespace {

using Cmp = SumSpec::Cmp;

struct ElimState {
	std::vector<ChainVar> A, B; // strict chains, outermost first
	int lowA = 0;               // B is always bounded below by 1
	Cmp cmp = Cmp::eq;
};

SumSpec state_spec(const ElimState &st)
{
	SumSpec s;
	s.chains.push_back(Chain{st.lowA, true, 0, st.A});
	s.chains.push_back(Chain{1, true, 1, st.B});
	s.cmp = st.cmp;
	return s;
}

std::pair<Rational, BiBracketIndex> chain_bibracket(const std::vector<ChainVar> &c)
{
	Rational coeff(1);
	BiBracketIndex idx;
	for (const auto &v : c) {
		coeff *= factorial(v.u) * factorial(v.t);
		idx.s.push_back(v.t + 1);
		idx.r.push_back(v.u);
	}
	return {coeff, idx};
}

void for_compositions(int total, int slots,
                      const std::function<void(const std::vector<int> &, const Rational &)> &cb)
{
	if (slots == 0) {
		if (total == 0)
			cb({}, Rational(1));
		return;
	}
	std::vector<int> comp(slots, 0);
	std::function<void(int, int)> rec = [&](int i, int left) {
		if (i == slots - 1) {
			comp[i] = left;
			Rational m = factorial(total);
			for (int c : comp)
				m /= factorial(c);
			cb(comp, m);
			return;
		}
		for (int c = 0; c <= left; ++c) {
			comp[i] = c;
			rec(i + 1, left - c);
		}
	};
	rec(0, total);
}

class Eliminator {
public:
	Eliminator(const ReduceOptions &opts, bool elim_b)
	    : opts_(opts), elim_b_(elim_b)
	{}

	BiBracketCombination rewrite(const ElimState &st, int depth)
	{
		if (depth > opts_.max_depth)
			throw Error(errc::budget,
			            "elimination recursion depth exceeded");
		BiBracketCombination out;
		switch (st.cmp) {
		case Cmp::eq: rewrite_eq(st, depth, out); break;
		case Cmp::gt: rewrite_gt(st, depth, out); break;
		case Cmp::lt: rewrite_lt(st, depth, out); break;
		default:
			throw Error(errc::internal, "unconstrained state in rewrite");
		}
		if (opts_.certify_order > 0)
			certify(st, out);
		return out;
	}

private:
	void certify(const ElimState &st, const BiBracketCombination &out)
	{
		QSeries lhs = sumspec_eval(state_spec(st), opts_.certify_order,
		                           opts_.tuple_budget);
		QSeries rhs = out.evaluate(opts_.certify_order);
		if (!(lhs == rhs))
			throw Error(errc::internal,
			            "rewrite step failed oracle certification");
	}

	void add_scaled(BiBracketCombination &out, BiBracketCombination in,
	                const Rational &c)
	{
		in *= c;
		out += in;
	}

	/* Substitutes the bottom d of one side into the constraint.
	 * elim_from_b: the eliminated pair is B's bottom (the primary
	 * direction); otherwise A's bottom (the mirror). slack: the move
	 * resolves a strict inequality by a slack variable, and the freed
	 * n pairs with it at the opposite chain's bottom; without slack
	 * (the equality moves) the freed n is summed by Faulhaber into the
	 * opposite chain's bottom exponent. */
	void substitute_bottom(const ElimState &st, bool elim_from_b, bool slack,
	                       int depth, BiBracketCombination &out)
	{
		const std::vector<ChainVar> &echain = elim_from_b ? st.B : st.A;
		const std::vector<ChainVar> &ochain = elim_from_b ? st.A : st.B;
		ChainVar el = echain.back();
		std::vector<ChainVar> same(echain.begin(), echain.end() - 1);
		std::vector<ChainVar> opp = ochain;
		size_t n_opp = opp.size(), n_same = same.size();
		int slots = static_cast<int>(n_opp + n_same) + (slack ? 1 : 0);

		for_compositions(el.t, slots, [&](const std::vector<int> &comp,
		                                  const Rational &multinom) {
			/* Slot layout: [opp..][slack?][same..]; the same-side
			 * d's enter the substituted power negatively. */
			int minus_power = 0;
			for (size_t i = 0; i < n_same; ++i)
				minus_power += comp[n_opp + (slack ? 1 : 0) + i];
			Rational c0 = multinom;
			if (minus_power % 2)
				c0 = -c0;
			int slack_t = slack ? comp[n_opp] : 0;

			std::vector<ChainVar> opp1 = opp, same1 = same;
			for (size_t i = 0; i < n_opp; ++i)
				opp1[i].t += comp[i];
			for (size_t i = 0; i < n_same; ++i)
				same1[i].t += comp[n_opp + (slack ? 1 : 0) + i];

			/* Binomial shifts by the freed n: opposite-side
			 * variables expand (m - n)^u, same-side (m + n)^u. */
			std::vector<int> ks(n_opp + n_same, 0);
			std::function<void(size_t, Rational, int)> binom =
			    [&](size_t i, Rational coeff, int npow) {
				    if (i < n_opp + n_same) {
					    int u = i < n_opp
					                ? opp1[i].u
					                : same1[i - n_opp].u;
					    for (int k = 0; k <= u; ++k) {
						    Rational c = coeff * binomial(u, k);
						    if (i < n_opp && k % 2)
							    c = -c;
						    ks[i] = k;
						    binom(i + 1, c, npow + k);
					    }
					    return;
				    }
				    std::vector<ChainVar> opp2 = opp1, same2 = same1;
				    for (size_t j = 0; j < n_opp; ++j)
					    opp2[j].u -= ks[j];
				    for (size_t j = 0; j < n_same; ++j)
					    same2[j].u -= ks[n_opp + j];
				    int a = el.u + npow;
				    finish(st, elim_from_b, slack, slack_t, a,
				           std::move(opp2), std::move(same2),
				           coeff, depth, out);
			    };
			binom(0, c0, 0);
		});
	}

	void finish(const ElimState &st, bool elim_from_b, bool slack, int slack_t,
	            int a, std::vector<ChainVar> opp, std::vector<ChainVar> same,
	            const Rational &coeff, int depth, BiBracketCombination &out)
	{
		auto make_state = [&](std::vector<ChainVar> opp_final,
		                      std::vector<ChainVar> same_final) {
			ElimState ns;
			ns.lowA = 1;
			ns.cmp = elim_from_b ? Cmp::gt : Cmp::lt;
			if (elim_from_b) {
				ns.A = std::move(opp_final);
				ns.B = std::move(same_final);
			} else {
				ns.B = std::move(opp_final);
				ns.A = std::move(same_final);
			}
			return ns;
		};

		if (slack) {
			/* The freed n joins the opposite chain's bottom,
			 * paired with the slack d. */
			opp.push_back(ChainVar{a, slack_t});
			add_scaled(out, rewrite(make_state(std::move(opp),
			                                   std::move(same)), depth + 1),
			           coeff);
			return;
		}
		/* Equality move: the freed n is summed over its admissible
		 * range; the resulting polynomial lands on the opposite
		 * chain's bottom exponent. The primary direction sums
		 * n = 1..M with M the A-chain bottom; the mirror sums
		 * n = lowA..M-1 with M the B-chain bottom. */
		NPoly range_sum;
		if (elim_from_b) {
			range_sum = faulhaber(a);
		} else {
			if (st.lowA != 0)
				throw Error(errc::internal,
				            "mirror move on an unnormalized chain");
			range_sum = faulhaber(a) - Poly::monomial(a, Rational(1));
			if (a == 0)
				range_sum += Poly(Rational(1)); // n = 0 contributes 0^0
		}
		for (int p = 0; p <= range_sum.degree(); ++p) {
			Rational cp = range_sum.coeff(p);
			if (cp == 0)
				continue;
			std::vector<ChainVar> opp2 = opp;
			opp2.back().u += p;
			add_scaled(out, rewrite(make_state(std::move(opp2), same),
			                        depth + 1),
			           coeff * cp);
		}
	}

	void rewrite_eq(const ElimState &st, int depth, BiBracketCombination &out)
	{
		if (st.A.empty() && st.B.empty()) {
			out.add_constant(Rational(1));
			return;
		}
		if (st.A.empty() || st.B.empty())
			return; // d-sums cannot balance
		if (st.lowA == 1) {
			/* Chain bound >= 1 splits as the >= 0 sum minus the
			 * n_bottom = 0 slice; the slice survives only when the
			 * bottom u-exponent vanishes (0^0 = 1). */
			ElimState relaxed = st;
			relaxed.lowA = 0;
			add_scaled(out, rewrite(relaxed, depth + 1), Rational(1));
			if (st.A.back().u != 0)
				return;
			ChainVar el = st.A.back();
			std::vector<ChainVar> A2(st.A.begin(), st.A.end() - 1);
			size_t nB = st.B.size(), nA2 = A2.size();
			for_compositions(
			    el.t, static_cast<int>(nB + nA2),
			    [&](const std::vector<int> &comp, const Rational &m) {
				    int minus_power = 0;
				    for (size_t i = 0; i < nA2; ++i)
					    minus_power += comp[nB + i];
				    Rational c = m;
				    if (minus_power % 2)
					    c = -c;
				    ElimState ns;
				    ns.lowA = 1;
				    ns.cmp = Cmp::lt;
				    ns.A = A2;
				    ns.B = st.B;
				    for (size_t i = 0; i < nB; ++i)
					    ns.B[i].t += comp[i];
				    for (size_t i = 0; i < nA2; ++i)
					    ns.A[i].t += comp[nB + i];
				    add_scaled(out, rewrite(ns, depth + 1), -c);
			    });
			return;
		}
		substitute_bottom(st, elim_b_, /*slack=*/false, depth, out);
	}

	void rewrite_gt(const ElimState &st, int depth, BiBracketCombination &out)
	{
		if (st.B.empty()) {
			if (!st.A.empty()) {
				auto [c, idx] = chain_bibracket(st.A);
				out.add_single(c, std::move(idx));
			}
			return;
		}
		if (st.A.empty())
			return; // 0 > positive sum is impossible
		if (elim_b_) {
			/* {>} = {free} - {=} - {<}. */
			auto [cA, iA] = chain_bibracket(st.A);
			auto [cB, iB] = chain_bibracket(st.B);
			out.add_product(cA * cB, std::move(iA), std::move(iB));
			ElimState eq = st;
			eq.cmp = Cmp::eq;
			add_scaled(out, rewrite(eq, depth + 1), Rational(-1));
			ElimState lt = st;
			lt.cmp = Cmp::lt;
			add_scaled(out, rewrite(lt, depth + 1), Rational(-1));
			return;
		}
		substitute_bottom(st, /*elim_from_b=*/false, /*slack=*/true, depth, out);
	}

	void rewrite_lt(const ElimState &st, int depth, BiBracketCombination &out)
	{
		if (st.A.empty()) {
			if (!st.B.empty()) {
				auto [c, idx] = chain_bibracket(st.B);
				out.add_single(c, std::move(idx));
			}
			return;
		}
		if (st.B.empty())
			return; // positive sum < 0 is impossible
		if (elim_b_) {
			substitute_bottom(st, /*elim_from_b=*/true, /*slack=*/true,
			                  depth, out);
			return;
		}
		/* Mirror split {<} = {free} - {=} - {>}. */
		auto [cA, iA] = chain_bibracket(st.A);
		auto [cB, iB] = chain_bibracket(st.B);
		out.add_product(cA * cB, std::move(iA), std::move(iB));
		ElimState eq = st;
		eq.cmp = Cmp::eq;
		add_scaled(out, rewrite(eq, depth + 1), Rational(-1));
		ElimState gt = st;
		gt.cmp = Cmp::gt;
		add_scaled(out, rewrite(gt, depth + 1), Rational(-1));
	}

	ReduceOptions opts_;
	bool elim_b_;
};

ElimState state_from_spec(const SumSpec &spec)
{
	if (spec.cmp != Cmp::eq)
		throw Error(errc::invalid_argument,
		            "elimination needs an equality constraint");
	if (spec.chains.size() != 2)
		throw Error(errc::invalid_argument,
		            "elimination needs exactly two chains");
	const Chain *a = nullptr, *b = nullptr;
	for (const auto &c : spec.chains) {
		if (c.group == 0)
			a = &c;
		else if (c.group == 1)
			b = &c;
	}
	if (!a || !b)
		throw Error(errc::invalid_argument,
		            "elimination needs one group-A and one group-B chain");
	if (a->vars.empty() || b->vars.empty())
		throw Error(errc::invalid_argument,
		            "elimination needs two nonempty d-groups");
	if (!a->strict || !b->strict)
		throw Error(errc::invalid_argument, "elimination needs strict chains");
	if (b->low != 1)
		throw Error(errc::invalid_argument,
		            "the group-B chain must be bounded below by 1");
	ElimState st;
	st.A = a->vars;
	st.B = b->vars;
	st.lowA = a->low;
	st.cmp = Cmp::eq;
	return st;
}

} // namespace

BiBracketCombination eliminate(const SumSpec &spec, const ReduceOptions &opts)
{
	ElimState st = state_from_spec(spec);
	/* Eliminate from the smaller group; both recursions terminate, the
	 * smaller side just bounds the depth better. */
	bool elim_b = st.B.size() <= st.A.size();
	Eliminator el(opts, elim_b);
	return el.rewrite(st, 0);
}

BiBracketCombination reduce_sum(const SumSpec &spec, const ReduceOptions &opts)
{
	BiBracketCombination out;
	for (const auto &[coeff, strict_spec] : order_decompose(spec)) {
		BiBracketCombination part = eliminate(strict_spec, opts);
		part *= coeff;
		out += part;
	}
	return out;
}

} // namespace qzk
