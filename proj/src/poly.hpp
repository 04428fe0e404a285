#pragma once

#include "rational.hpp"

#include <vector>

namespace qzk {

/* Dense univariate polynomial over Rational. Used both for the
 * Eulerian numerators tP_{s-1}(t) and for the sums-of-powers
 * polynomials in n. Zero polynomial has an empty coefficient list. */
class Poly {
public:
	Poly() = default;
	explicit Poly(Rational constant);
	static Poly monomial(int power, Rational c);

	bool is_zero() const { return coeff_.empty(); }
	int degree() const { return static_cast<int>(coeff_.size()) - 1; }
	Rational coeff(int k) const;
	const std::vector<Rational> &coeffs() const { return coeff_; }

	Poly &operator+=(const Poly &o);
	Poly &operator-=(const Poly &o);
	friend Poly operator+(Poly a, const Poly &b) { return a += b; }
	friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
	friend Poly operator*(const Poly &a, const Poly &b);
	Poly &operator*=(const Rational &c);
	friend Poly operator*(Poly a, const Rational &c) { return a *= c; }

	Rational eval(const Rational &x) const;
	bool operator==(const Poly &) const = default;

	std::string str(const std::string &var) const;

private:
	void trim();
	std::vector<Rational> coeff_;
};

} // namespace qzk
