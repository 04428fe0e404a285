#include "poly.hpp"

#include <sstream>

namespace qzk {

Poly::Poly(Rational constant)
{
	if (constant != 0)
		coeff_.push_back(std::move(constant));
}

Poly Poly::monomial(int power, Rational c)
{
	Poly p;
	if (c == 0)
		return p;
	if (power < 0)
		throw Error(errc::invalid_argument, "negative monomial power");
	p.coeff_.assign(power + 1, Rational(0));
	p.coeff_[power] = std::move(c);
	return p;
}

Rational Poly::coeff(int k) const
{
	if (k < 0 || k >= static_cast<int>(coeff_.size()))
		return Rational(0);
	return coeff_[k];
}

void Poly::trim()
{
	while (!coeff_.empty() && coeff_.back() == 0)
		coeff_.pop_back();
}

Poly &Poly::operator+=(const Poly &o)
{
	if (coeff_.size() < o.coeff_.size())
		coeff_.resize(o.coeff_.size(), Rational(0));
	for (size_t i = 0; i < o.coeff_.size(); ++i)
		coeff_[i] += o.coeff_[i];
	trim();
	return *this;
}

Poly &Poly::operator-=(const Poly &o)
{
	if (coeff_.size() < o.coeff_.size())
		coeff_.resize(o.coeff_.size(), Rational(0));
	for (size_t i = 0; i < o.coeff_.size(); ++i)
		coeff_[i] -= o.coeff_[i];
	trim();
	return *this;
}

Poly operator*(const Poly &a, const Poly &b)
{
	Poly r;
	if (a.is_zero() || b.is_zero())
		return r;
	r.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Rational(0));
	for (size_t i = 0; i < a.coeff_.size(); ++i) {
		if (a.coeff_[i] == 0)
			continue;
		for (size_t j = 0; j < b.coeff_.size(); ++j)
			r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
	}
	r.trim();
	return r;
}

Poly &Poly::operator*=(const Rational &c)
{
	if (c == 0) {
		coeff_.clear();
		return *this;
	}
	for (auto &x : coeff_)
		x *= c;
	return *this;
}

Rational Poly::eval(const Rational &x) const
{
	Rational r(0);
	for (size_t i = coeff_.size(); i-- > 0;)
		r = r * x + coeff_[i];
	return r;
}

std::string Poly::str(const std::string &var) const
{
	if (is_zero())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (size_t i = 0; i < coeff_.size(); ++i) {
		if (coeff_[i] == 0)
			continue;
		if (!first)
			os << " + ";
		first = false;
		os << rat_str(coeff_[i]);
		if (i >= 1)
			os << "*" << var;
		if (i >= 2)
			os << "^" << i;
	}
	return os.str();
}

} // namespace qzk
