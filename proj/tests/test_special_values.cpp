#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "special_values.hpp"

using namespace qzk;

namespace {

QSeries from_ints(std::initializer_list<long> cs)
{
	QSeries s(static_cast<int>(cs.size()) - 1);
	int k = 0;
	for (long c : cs)
		s.set(k++, Rational(c));
	return s;
}

Rational ipow(long b, int e)
{
	Rational p(1);
	for (int k = 0; k < e; ++k)
		p *= b;
	return p;
}

} // namespace

TEST_CASE("eulerian numerators")
{
	CHECK(eulerian_numerator(1) == Poly::monomial(1, Rational(1)));
	CHECK(eulerian_numerator(2) == Poly::monomial(1, Rational(1)));
	CHECK(eulerian_numerator(3) ==
	      Poly::monomial(1, Rational(1)) + Poly::monomial(2, Rational(1)));
	/* t + 4t^2 + t^3 for the cubes. */
	CHECK(eulerian_numerator(4).coeff(2) == Rational(4));
	CHECK_THROWS_AS(eulerian_numerator(0), Error);
}

TEST_CASE("bernoulli numbers against the recurrence oracle")
{
	/* B_n = -1/(n+1) sum_{j<n} C(n+1, j) B_j with B_0 = 1 reproduces
	 * the same convention as the generating series. */
	std::vector<Rational> oracle{Rational(1)};
	for (int n = 1; n <= 12; ++n) {
		Rational acc(0);
		for (int j = 0; j < n; ++j)
			acc += binomial(n + 1, j) * oracle[j];
		oracle.push_back(-acc / (n + 1));
	}
	for (int i = 0; i <= 12; ++i)
		CHECK(bernoulli(i) == oracle[i]);
	CHECK(bernoulli(2) == frac(1, 6));
	CHECK(bernoulli(3) == 0);
	CHECK(bernoulli(4) == frac(-1, 30));
}

TEST_CASE("brackets: divisor series and the empty index")
{
	CHECK(bracket(BracketIndex{{1}}, 6) == from_ints({0, 1, 2, 2, 3, 2, 4}));
	CHECK(bracket(BracketIndex{{2}}, 6) == from_ints({0, 1, 3, 4, 7, 6, 12}));
	CHECK(bracket(BracketIndex{{}}, 5) == QSeries::one(5));
	CHECK_THROWS_AS(bracket(BracketIndex{{0}}, 5), Error);
}

TEST_CASE("single brackets match the closed divisor-power form")
{
	int n = 20;
	for (int s = 1; s <= 6; ++s) {
		QSeries expect(n);
		for (int d = 1; d <= n; ++d) {
			QSeries g = geometric_series(d, 1, n);
			g *= ipow(d, s - 1);
			expect += g;
		}
		expect *= 1 / factorial(s - 1);
		CHECK(bracket(BracketIndex{{s}}, n) == expect);
	}
}

TEST_CASE("bi-brackets reduce to brackets at r = 0")
{
	for (int s = 1; s <= 4; ++s)
		CHECK(bibracket(BiBracketIndex{{s}, {0}}, 12) ==
		      bracket(BracketIndex{{s}}, 12));
}

TEST_CASE("bi-bracket frozen examples")
{
	/* [2|1] has coefficient m tau(m). */
	CHECK(bibracket(BiBracketIndex{{2}, {1}}, 5) ==
	      from_ints({0, 1, 4, 6, 12, 10}));

	/* [3|1] against the brute-force double loop. */
	int n = 8;
	QSeries expect(n);
	for (int u = 1; u <= n; ++u)
		for (int v = 1; u * v <= n; ++v)
			expect.add_to(u * v, Rational(u) * v * v / 2);
	CHECK(bibracket(BiBracketIndex{{3}, {1}}, n) == expect);
	CHECK_THROWS_AS(bibracket(BiBracketIndex{{1, 2}, {0}}, 5), Error);
}

TEST_CASE("dual-formula agreement for all indices of weight <= 5")
{
	int n = 25;
	std::vector<BiBracketIndex> all;
	for (int w = 1; w <= 5; ++w)
		for (int depth = 1; depth <= w; ++depth) {
			std::vector<int> s(depth), r(depth);
			std::function<void(int, int)> rec = [&](int i, int left) {
				if (i == 2 * depth) {
					if (left == 0)
						all.push_back({s, r});
					return;
				}
				if (i < depth) {
					for (int v = 1; v <= left; ++v) {
						s[i] = v;
						rec(i + 1, left - v);
					}
				} else {
					for (int v = 0; v <= left; ++v) {
						r[i - depth] = v;
						rec(i + 1, left - v);
					}
				}
			};
			rec(0, w);
		}
	for (const auto &idx : all)
		CHECK(bibracket(idx, n) == bibracket_kernel_form(idx, n));
}

TEST_CASE("Z-values: identities with brackets")
{
	int n = 30;
	CHECK(zvalue({2}, n) == bracket(BracketIndex{{2}}, n));
	CHECK(zvalue({3}, n) == bracket(BracketIndex{{3}}, n) * Rational(2));
	CHECK(zvalue({4}, n) ==
	      bracket(BracketIndex{{4}}, n) -
	          bracket(BracketIndex{{2}}, n) * frac(1, 6));
	CHECK(zvalue({}, 5) == QSeries::one(5));
	CHECK_THROWS_AS(zvalue({1}, 5), Error);
	CHECK_THROWS_AS(zvalue({2, 1}, 5), Error);
}

TEST_CASE("Eisenstein series")
{
	int n = 30;
	QSeries g2 = eisenstein(2, n);
	CHECK(g2[0] == frac(-1, 24));
	CHECK(g2 == QSeries::constant(frac(-1, 24), n) + zvalue({2}, n));

	/* The G4 identity with the printed coefficients transposed back to
	 * what the generating formula actually gives. */
	QSeries g4 = eisenstein(4, n);
	CHECK(g4[0] == frac(1, 1440));
	CHECK(g4 == QSeries::constant(frac(1, 1440), n) +
	                zvalue({2}, n) * frac(1, 6) + zvalue({4}, n));

	QSeries g6 = eisenstein(6, n);
	CHECK(g6[0] == frac(-1, 60480));
	CHECK(g6 == QSeries::constant(frac(-1, 60480), n) +
	                zvalue({2}, n) * frac(1, 120) +
	                zvalue({4}, n) * frac(1, 4) + zvalue({6}, n));

	CHECK_THROWS_AS(eisenstein(3, 5), Error);
	CHECK_THROWS_AS(eisenstein(0, 5), Error);
}

TEST_CASE("truncation stability")
{
	BracketIndex idx{{2, 1}};
	CHECK(prefix_equal(bracket(idx, 14), bracket(idx, 24), 14));
	BiBracketIndex bidx{{2}, {2}};
	CHECK(prefix_equal(bibracket(bidx, 10), bibracket(bidx, 20), 10));
}

TEST_CASE("qBD membership flag is structural")
{
	CHECK(BiBracketIndex{{2, 1}, {0, 7}}.in_qbd());
	CHECK(!BiBracketIndex{{1}, {3}}.in_qbd());
	CHECK(BiBracketIndex{{}, {}}.in_qbd());
	CHECK(BiBracketIndex{{2, 1}, {0, 7}}.weight() == 10);
	CHECK(BracketIndex{{3, 1}}.weight() == 4);
}

TEST_CASE("labels")
{
	CHECK(BracketIndex{{2, 1}}.label() == "[2,1]");
	CHECK(BiBracketIndex{{2, 1}, {0, 1}}.label() == "[2,1|0,1]");
	CHECK(BracketIndex{{}}.label() == "1");
	CHECK(family_from_string("qBD") == Family::qBD);
	CHECK(!family_from_string("nope").has_value());
}
