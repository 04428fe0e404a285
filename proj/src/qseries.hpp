#pragma once

#include "rational.hpp"

#include <string>
#include <vector>

namespace qzk {

/* Truncated power series in q over exact rationals. Order N means the
 * coefficients of q^0 .. q^N are stored; everything beyond is unknown.
 * Binary operations on mismatched orders truncate to the smaller one
 * and the result records that order. */
class QSeries {
public:
	explicit QSeries(int order);
	static QSeries one(int order);
	static QSeries constant(const Rational &c, int order);
	static QSeries monomial(int power, const Rational &c, int order);

	int order() const { return static_cast<int>(coeff_.size()) - 1; }
	const Rational &operator[](int k) const { return coeff_[k]; }
	void set(int k, Rational v);
	void add_to(int k, const Rational &v) { coeff_[k] += v; }

	bool is_zero() const;
	/* Smallest k with nonzero coefficient; order()+1 for the zero series. */
	int valuation() const;
	QSeries truncated(int order) const;

	QSeries &operator+=(const QSeries &o);
	QSeries &operator-=(const QSeries &o);
	friend QSeries operator+(QSeries a, const QSeries &b) { return a += b; }
	friend QSeries operator-(QSeries a, const QSeries &b) { return a -= b; }
	friend QSeries operator*(const QSeries &a, const QSeries &b);
	QSeries operator-() const;
	QSeries &operator*=(const Rational &c);
	friend QSeries operator*(QSeries a, const Rational &c) { return a *= c; }

	/* Requires a nonzero constant term. */
	QSeries inverse() const;
	/* Negative exponents go through inverse(). */
	QSeries pow(int e) const;
	/* Multiplication by q^k. */
	QSeries shifted(int k) const;

	bool operator==(const QSeries &) const = default;

	std::string to_json() const;
	static QSeries from_json(const std::string &text);
	std::string str() const;

private:
	std::vector<Rational> coeff_;
};

/* Sum_{n >= start} q^{n*step} truncated; the inner geometric sums of
 * the single-bracket formula. Rejects step = 0. */
QSeries geometric_series(int step, int start, int order);

bool prefix_equal(const QSeries &a, const QSeries &b, int upto);

} // namespace qzk
