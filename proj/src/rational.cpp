#include "rational.hpp"

#include <cctype>

namespace qzk {

Rational frac(long num, long den)
{
	if (den == 0)
		throw Error(errc::invalid_argument, "fraction with zero denominator");
	Rational r(num, den);
	r.canonicalize();
	return r;
}

std::string rat_str(const Rational &r) { return r.get_str(); }

Rational rat_parse(const std::string &s)
{
	if (s.empty())
		throw Error(errc::invalid_argument, "empty rational literal");
	for (char c : s) {
		if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' &&
		    c != '+' && c != '/')
			throw Error(errc::invalid_argument,
			            "malformed rational literal: " + s);
	}
	mpq_class r;
	if (r.set_str(s, 10) != 0)
		throw Error(errc::invalid_argument, "malformed rational literal: " + s);
	if (r.get_den() == 0)
		throw Error(errc::invalid_argument, "zero denominator in: " + s);
	r.canonicalize();
	return r;
}

Rational factorial(unsigned n)
{
	mpz_class f;
	mpz_fac_ui(f.get_mpz_t(), n);
	return Rational(f);
}

Rational binomial(unsigned long n, unsigned long k)
{
	if (k > n)
		return Rational(0);
	mpz_class b;
	mpz_bin_uiui(b.get_mpz_t(), n, k);
	return Rational(b);
}

} // namespace qzk
