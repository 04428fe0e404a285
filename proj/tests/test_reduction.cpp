#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reduction.hpp"

#include <functional>
#include <random>

using namespace qzk;

namespace {

SumSpec two_free_chains(std::vector<ChainVar> a, std::vector<ChainVar> b)
{
	SumSpec spec;
	spec.cmp = SumSpec::Cmp::eq;
	spec.chains = {Chain{0, false, 0, std::move(a)},
	               Chain{1, false, 1, std::move(b)}};
	return spec;
}

int chain_weight(const SumSpec &s)
{
	int w = 0;
	for (const auto &c : s.chains)
		for (const auto &v : c.vars)
			w += v.u + v.t + 1;
	return w;
}

} // namespace

TEST_CASE("faulhaber basics")
{
	CHECK(faulhaber(0) == Poly::monomial(1, Rational(1)));
	Poly s1 = faulhaber(1);
	CHECK(s1.eval(Rational(10)) == Rational(55));
	Poly s3 = faulhaber(3);
	Rational acc(0);
	for (int n = 1; n <= 50; ++n) {
		acc += Rational(n) * n * n;
		CHECK(s3.eval(Rational(n)) == acc);
	}
}

TEST_CASE("power sums over simplices")
{
	CHECK(power_sum_le({1}) == faulhaber(1));
	NPoly p = power_sum_le({1, 1});
	CHECK(p.eval(Rational(3)) == Rational(5));
	CHECK(p.eval(Rational(1)) == Rational(0)); // r = 2 needs n >= 2
	CHECK(p.degree() == 4);
	CHECK_THROWS_AS(power_sum_le({1, 0}), Error);
}

TEST_CASE("power sums over compositions")
{
	NPoly p = power_sum_eq({1, 1});
	/* n(n^2-1)/6. */
	CHECK(p.eval(Rational(3)) == Rational(4));
	CHECK(p.eval(Rational(1)) == Rational(0));
	CHECK(p.degree() == 3);
	CHECK(power_sum_eq({3}) == Poly::monomial(3, Rational(1)));
	CHECK_THROWS_AS(power_sum_eq({0, 1}), Error);

	/* The t = 0 variant used internally by the decomposition: the
	 * composition count C(n-1, k-1). */
	NPoly c2 = composition_power_sum({0, 0});
	for (int n = 1; n <= 10; ++n)
		CHECK(c2.eval(Rational(n)) == Rational(n - 1));
}

TEST_CASE("sumspec oracle basics")
{
	SumSpec empty;
	CHECK(sumspec_eval(empty, 5) == QSeries::one(5));

	/* One strict chain without constraint: the bracket [1]. */
	SumSpec single;
	single.chains = {Chain{1, true, -1, {{0, 0}}}};
	QSeries tau = sumspec_eval(single, 8);
	CHECK(tau[6] == Rational(4));

	/* Unsatisfiable constraint: group sums cannot match. */
	SumSpec bad = two_free_chains({{0, 0}}, {{0, 0}, {0, 0}});
	bad.cmp = SumSpec::Cmp::eq;
	bad.chains[0].vars[0].t = 0;
	/* d_A = d_B1 + d_B2 is satisfiable; make it impossible with lt. */
	SumSpec impossible;
	impossible.cmp = SumSpec::Cmp::lt;
	impossible.chains = {Chain{1, true, 0, {{0, 0}}},
	                     Chain{1, true, 1, {}}};
	CHECK(sumspec_eval(impossible, 6).is_zero());

	/* Zero-bound variables without a bounding constraint are refused. */
	SumSpec unbounded;
	unbounded.chains = {Chain{0, false, -1, {{0, 0}}}};
	CHECK_THROWS_AS(sumspec_eval(unbounded, 5), Error);

	/* Tuple budget guard. */
	SumSpec big;
	big.chains = {Chain{1, false, -1, {{0, 0}, {0, 0}}}};
	CHECK_THROWS_AS(sumspec_eval(big, 15, 10), Error);
}

TEST_CASE("sumspec json round trip")
{
	SumSpec spec = two_free_chains({{1, 2}}, {{0, 1}, {2, 0}});
	SumSpec back = SumSpec::from_json(spec.to_json());
	CHECK(back == spec);
	CHECK_THROWS_AS(SumSpec::from_json(R"({"constraint":"weird","chains":[]})"),
	                Error);
}

TEST_CASE("ordering decomposition: structure")
{
	/* A strict chain or a single free pair decomposes to itself. */
	SumSpec single;
	single.chains = {Chain{1, false, -1, {{1, 1}}}};
	auto parts = order_decompose(single);
	REQUIRE(parts.size() == 1);
	CHECK(parts[0].first == Rational(1));
	CHECK(parts[0].second.chains[0].strict);
	CHECK(parts[0].second.chains[0].vars == std::vector<ChainVar>{{1, 1}});

	/* Group membership survives the merge. */
	SumSpec spec = two_free_chains({{0, 1}, {0, 1}}, {{0, 1}});
	for (const auto &[c, piece] : order_decompose(spec)) {
		REQUIRE(piece.chains.size() == 2);
		CHECK(piece.chains[0].group == 0);
		CHECK(piece.chains[1].group == 1);
		for (const auto &chain : piece.chains)
			CHECK(chain.strict);
		CHECK(chain_weight(piece) <= chain_weight(spec));
	}
}

TEST_CASE("ordering decomposition: values")
{
	/* Free chain of length 2, exponents t = (1,1), no constraint. */
	SumSpec spec;
	spec.chains = {Chain{1, false, -1, {{0, 1}, {0, 1}}}};
	QSeries want = sumspec_eval(spec, 15);
	QSeries got(15);
	for (const auto &[c, piece] : order_decompose(spec))
		got += sumspec_eval(piece, 15) * c;
	CHECK(want == got);
}

TEST_CASE("elimination: anchor examples")
{
	/* r = s = 1, u = (0,0), t = (1,1): the sum collapses to 2 [3|1]. */
	SumSpec spec = two_free_chains({{0, 1}}, {{0, 1}});
	BiBracketCombination combo = reduce_sum(spec);
	REQUIRE(combo.size() == 1);
	auto it = combo.terms().begin();
	REQUIRE(it->first.size() == 1);
	CHECK(it->first[0] == BiBracketIndex{{3}, {1}});
	CHECK(it->second == Rational(2));
	CHECK(combo.evaluate(15) == sumspec_eval(spec, 15));
	CHECK(combo.all_qbd());
	CHECK(combo.max_weight() <= 4);

	/* r = s = 1, u = t = (0,0): weight bound 2. */
	SumSpec spec0 = two_free_chains({{0, 0}}, {{0, 0}});
	BiBracketCombination c0 = reduce_sum(spec0);
	CHECK(c0.evaluate(15) == sumspec_eval(spec0, 15));
	CHECK(c0.max_weight() <= 2);
}

TEST_CASE("elimination rejects malformed inputs")
{
	SumSpec degenerate;
	degenerate.cmp = SumSpec::Cmp::eq;
	degenerate.chains = {Chain{0, true, 0, {}}, Chain{1, true, 1, {{0, 1}}}};
	CHECK_THROWS_AS(eliminate(degenerate), Error);

	SumSpec wrong_cmp = two_free_chains({{0, 1}}, {{0, 1}});
	wrong_cmp.cmp = SumSpec::Cmp::lt;
	wrong_cmp.chains[0].strict = wrong_cmp.chains[1].strict = true;
	CHECK_THROWS_AS(eliminate(wrong_cmp), Error);

	SumSpec free_chain = two_free_chains({{0, 1}}, {{0, 1}});
	CHECK_THROWS_AS(eliminate(free_chain), Error); // not strict
}

TEST_CASE("stepwise certification catches nothing on valid inputs")
{
	ReduceOptions opts;
	opts.certify_order = 8;
	SumSpec spec = two_free_chains({{1, 1}}, {{0, 1}});
	spec.chains[0].strict = spec.chains[1].strict = true;
	CHECK_NOTHROW(eliminate(spec, opts));
}

TEST_CASE("full pipeline certifies on randomized small sums")
{
	std::mt19937 rng(424242);
	auto pick = [&](int lo, int hi) {
		return std::uniform_int_distribution<int>(lo, hi)(rng);
	};
	for (int round = 0; round < 25; ++round) {
		int r = pick(1, 2), s = pick(1, 2);
		if (r + s > 3)
			s = 1;
		std::vector<ChainVar> a, b;
		for (int i = 0; i < r; ++i)
			a.push_back({pick(0, 2), pick(0, 2)});
		for (int i = 0; i < s; ++i)
			b.push_back({pick(0, 2), pick(0, 2)});
		SumSpec spec = two_free_chains(a, b);
		BiBracketCombination combo = reduce_sum(spec);
		CHECK(combo.evaluate(14) == sumspec_eval(spec, 14));
	}
}

TEST_CASE("qBD guarantee and weight bound under positive t")
{
	std::mt19937 rng(99);
	auto pick = [&](int lo, int hi) {
		return std::uniform_int_distribution<int>(lo, hi)(rng);
	};
	for (int round = 0; round < 20; ++round) {
		int r = pick(1, 2), s = pick(1, 2);
		std::vector<ChainVar> a, b;
		int weight = 0;
		for (int i = 0; i < r; ++i) {
			a.push_back({pick(0, 2), pick(1, 2)});
			weight += a.back().u + a.back().t + 1;
		}
		for (int i = 0; i < s; ++i) {
			b.push_back({pick(0, 2), pick(1, 2)});
			weight += b.back().u + b.back().t + 1;
		}
		SumSpec spec = two_free_chains(a, b);
		BiBracketCombination combo = reduce_sum(spec);
		CHECK(combo.all_qbd());
		CHECK(combo.max_weight() <= weight);
	}
}

TEST_CASE("recursion depth guard")
{
	ReduceOptions opts;
	opts.max_depth = 1;
	SumSpec spec = two_free_chains({{0, 1}, {1, 1}}, {{0, 1}, {1, 0}});
	CHECK_THROWS_AS(reduce_sum(spec, opts), Error);
}

TEST_CASE("combination container semantics")
{
	BiBracketCombination c;
	c.add_single(Rational(2), BiBracketIndex{{3}, {1}});
	c.add_single(Rational(-2), BiBracketIndex{{3}, {1}});
	CHECK(c.empty());
	c.add_product(Rational(1), BiBracketIndex{{2}, {0}}, BiBracketIndex{{1}, {0}});
	c.add_product(Rational(1), BiBracketIndex{{1}, {0}}, BiBracketIndex{{2}, {0}});
	REQUIRE(c.size() == 1); // products commute, keys are sorted
	CHECK(c.terms().begin()->second == Rational(2));
	CHECK(c.evaluate(10) ==
	      bibracket(BiBracketIndex{{1}, {0}}, 10) *
	          bibracket(BiBracketIndex{{2}, {0}}, 10) * Rational(2));
	CHECK(!c.all_qbd());
	c.add_constant(frac(1, 3));
	CHECK(c.evaluate(5)[0] == frac(1, 3));
}
