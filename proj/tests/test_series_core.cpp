#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ring.hpp"

#include <random>

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

} // namespace

TEST_CASE("rational parsing and canonical form")
{
	CHECK(rat_str(frac(2, 4)) == "1/2");
	CHECK(rat_str(frac(-2, -4)) == "1/2");
	CHECK(rat_str(frac(3, -6)) == "-1/2");
	CHECK(rat_parse("7") == Rational(7));
	CHECK(rat_parse("-3/9") == frac(-1, 3));
	CHECK_THROWS_AS(rat_parse("1/0"), Error);
	CHECK_THROWS_AS(rat_parse("x"), Error);
	CHECK_THROWS_AS(frac(1, 0), Error);
}

TEST_CASE("series arithmetic basics")
{
	QSeries one_plus = from_ints({1, 1, 0});
	QSeries one_minus = from_ints({1, -1, 0});
	CHECK(one_plus * one_minus == from_ints({1, 0, -1}));

	std::mt19937 rng(7);
	for (int round = 0; round < 10; ++round) {
		QSeries s(8);
		for (int k = 0; k <= 8; ++k)
			s.set(k, frac(static_cast<int>(rng() % 13) - 6, 1 + rng() % 3));
		CHECK((s * QSeries(8)).is_zero());
	}
}

TEST_CASE("telescoping product collapses to 1 at the truncation order")
{
	int n = 9;
	QSeries all(n);
	for (int k = 0; k <= n; ++k)
		all.set(k, Rational(1));
	QSeries one_minus_q(n);
	one_minus_q.set(0, Rational(1));
	one_minus_q.set(1, Rational(-1));
	CHECK(all * one_minus_q == QSeries::one(n));
}

TEST_CASE("mismatched orders truncate to the minimum")
{
	QSeries a = QSeries::one(10), b = QSeries::one(6);
	CHECK((a + b).order() == 6);
	CHECK((a * b).order() == 6);
}

TEST_CASE("geometric series")
{
	CHECK(geometric_series(1, 1, 4) == from_ints({0, 1, 1, 1, 1}));
	CHECK(geometric_series(2, 0, 5) == from_ints({1, 0, 1, 0, 1, 0}));
	CHECK(geometric_series(3, 2, 9) ==
	      from_ints({0, 0, 0, 0, 0, 0, 1, 0, 0, 1}));
	CHECK_THROWS_AS(geometric_series(0, 1, 4), Error);
}

TEST_CASE("series inverse and powers")
{
	QSeries s = from_ints({1, 2, -1, 3, 0, 1, -2, 1});
	CHECK(s * s.inverse() == QSeries::one(7));
	CHECK(s.pow(-2) * s.pow(2) == QSeries::one(7));
	CHECK_THROWS_AS(QSeries(5).inverse(), Error);
}

TEST_CASE("series json round trip")
{
	QSeries s = from_ints({1, 0, -3});
	s.set(2, frac(-3, 7));
	std::string j = s.to_json();
	CHECK(j == R"({"N":2,"coeffs":["1","0","-3/7"]})");
	CHECK(QSeries::from_json(j) == s);
}

TEST_CASE("ring multiplication identities")
{
	auto vars = make_vars({"z", "w"}, {"y"});
	Truncation tr{6, 3, 3, 4};
	auto one = RingElement::constant(vars, tr, Rational(1));
	auto z = RingElement::variable(vars, tr, "z");
	auto w = RingElement::variable(vars, tr, "w");
	CHECK(z * one == z);
	CHECK(!(z * w).is_zero());

	Truncation tight{6, 1, 1, 4};
	auto z1 = RingElement::variable(vars, tight, "z");
	auto w1 = RingElement::variable(vars, tight, "w");
	auto zw = z1 * w1;
	CHECK(zw.is_zero());
	CHECK(zw.degree_clipped());

	auto y = RingElement::y_power(vars, tr, {1});
	auto yinv = RingElement::y_power(vars, tr, {-1});
	CHECK(y * yinv == one);
}

TEST_CASE("ring axioms on random triples")
{
	std::mt19937 rng(20240811);
	auto vars = make_vars({"z", "w"}, {"y"});
	Truncation tr{6, 3, 3, 4};
	auto rand_elem = [&]() {
		RingElement e(vars, tr);
		for (int k = 0; k < 4; ++k) {
			Exponents fe = {static_cast<int>(rng() % 2),
			                static_cast<int>(rng() % 2)};
			Exponents ye = {static_cast<int>(rng() % 5) - 2};
			QSeries c(tr.q_order);
			c.set(static_cast<int>(rng() % (tr.q_order + 1)),
			      frac(static_cast<int>(rng() % 9) - 4,
			           1 + static_cast<int>(rng() % 3)));
			e.accumulate(fe, ye, c);
		}
		return e;
	};
	for (int round = 0; round < 15; ++round) {
		auto a = rand_elem(), b = rand_elem(), c = rand_elem();
		CHECK((a * b) * c == a * (b * c));
		CHECK(a * (b + c) == a * b + a * c);
		CHECK(a * b == b * a);
	}
}

TEST_CASE("mixed truncations take componentwise minima")
{
	auto vars = make_vars({"z"});
	Truncation big{10, 5, 5, 10}, small{6, 2, 2, 3};
	auto a = RingElement::variable(vars, big, "z");
	auto b = RingElement::variable(vars, small, "z");
	auto p = a * b;
	CHECK(p.trunc().q_order == 6);
	CHECK(p.trunc().degree == 2);
	CHECK(p.trunc().y_bound == 3);
}

TEST_CASE("separate declarations merge by union")
{
	Truncation tr{6, 3, 3, 3};
	auto a = RingElement::variable(make_vars({"z"}), tr, "z");
	auto b = RingElement::variable(make_vars({"w"}), tr, "w");
	auto p = a * b;
	CHECK(p.vars()->formal == std::vector<std::string>{"z", "w"});
	CHECK(p.coeff_y0(p.parse_monomial("z*w")) == QSeries::one(6));
}

TEST_CASE("exp of polynomials")
{
	auto vars = make_vars({"z"});
	Truncation tr{4, 3, 3, 4};
	CHECK(exp_truncated(RingElement(vars, tr)) ==
	      RingElement::constant(vars, tr, Rational(1)));

	auto z = RingElement::variable(vars, tr, "z");
	auto ez = exp_truncated(z);
	CHECK(ez.coeff_y0(Exponents{0})[0] == Rational(1));
	CHECK(ez.coeff_y0(Exponents{1})[0] == Rational(1));
	CHECK(ez.coeff_y0(Exponents{2})[0] == frac(1, 2));
	CHECK(ez.coeff_y0(Exponents{3})[0] == frac(1, 6));

	CHECK_THROWS_AS(
	    exp_truncated(RingElement::constant(vars, tr, Rational(2))), Error);
}

TEST_CASE("exp rejects q-constant Laurent terms")
{
	auto vars = make_vars({}, {"y"});
	Truncation tr{4, 2, 2, 4};
	auto y = RingElement::y_power(vars, tr, {1});
	CHECK_THROWS_AS(exp_truncated(y), Error);
}

TEST_CASE("exp of the product logarithm reproduces Euler's signs")
{
	/* log prod_{n>=1} (1 - q^n) = -sum_d q^d / (d (1 - q^d)); the
	 * exponential must match the pentagonal-number expansion. */
	int n = 12;
	auto vars = make_vars({});
	Truncation tr{n, 0, 0, 0};
	QSeries lg(n);
	for (int d = 1; d <= n; ++d) {
		QSeries g = geometric_series(d, 1, n);
		g *= frac(-1, d);
		lg += g;
	}
	auto expd = exp_truncated(RingElement::from_qseries(vars, tr, lg));
	QSeries direct = QSeries::one(n);
	for (int k = 1; k <= n; ++k) {
		QSeries b = QSeries::one(n);
		b.add_to(k, Rational(-1));
		direct = direct * b;
	}
	CHECK(expd.coeff_y0(Exponents{}) == direct);
	CHECK(direct ==
	      QSeries::from_json(R"({"N":12,"coeffs":["1","-1","-1","0","0","1","0","1","0","0","0","0","-1"]})"));
}

TEST_CASE("bell coefficients: first cases")
{
	auto vars = make_vars({"w"});
	Truncation tr{6, 6, 6, 4};
	/* f' and f'' as elements in w. */
	RingElement f1(vars, tr), f2(vars, tr);
	f1.accumulate({1}, {}, QSeries::constant(Rational(3), 6));
	f2.accumulate({0}, {}, QSeries::monomial(1, Rational(2), 6));

	auto m1 = bell_coefficient({f1, f2}, 1);
	CHECK(m1 == f1);

	auto m2 = bell_coefficient({f1, f2}, 2);
	RingElement want = f2;
	want *= frac(1, 2);
	RingElement sq = f1 * f1;
	sq *= frac(1, 2);
	want += sq;
	CHECK(m2 == want);

	CHECK_THROWS_AS(bell_coefficient({f1}, 2), Error);
}

TEST_CASE("coefficient extraction and the y0 part")
{
	auto vars = make_vars({"z"}, {"y"});
	Truncation tr{5, 2, 2, 3};
	auto one = RingElement::constant(vars, tr, Rational(1));
	CHECK(one.coeff_y0(Exponents{0}) == QSeries::one(5));

	RingElement e(vars, tr);
	e.accumulate({0}, {1}, QSeries::one(5));
	e.accumulate({0}, {0}, QSeries::constant(Rational(3), 5));
	e.accumulate({0}, {-1}, QSeries::monomial(1, Rational(1), 5));
	YLayer layer = e.coeff(Exponents{0});
	CHECK(layer.y0_part(5) == QSeries::constant(Rational(3), 5));
	CHECK(e.y0_raw().term_count() == 1);
}

TEST_CASE("saturation flag on out-of-bound Laurent exponents")
{
	auto vars = make_vars({}, {"y"});
	Truncation tr{4, 0, 0, 2};
	auto y2 = RingElement::y_power(vars, tr, {2});
	auto prod = y2 * y2; // exponent 4 leaves [-2, 2]
	CHECK(prod.is_zero());
	CHECK(prod.saturated());
}

TEST_CASE("monomial strings parse back")
{
	auto vars = make_vars({"z1", "w1", "a"}, {}, {"a"});
	Truncation tr{4, 4, 4, 0};
	RingElement e(vars, tr);
	Exponents fe = {2, 1, 0};
	CHECK(e.monomial_string(fe) == "z1^2*w1");
	CHECK(e.parse_monomial("z1^2*w1") == fe);
	CHECK(e.parse_monomial("1") == Exponents{0, 0, 0});
	CHECK_THROWS_AS(e.parse_monomial("zz"), Error);
}
