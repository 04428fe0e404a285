#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qzk {

/* Exact rational scalar. mpq_class results of arithmetic are kept
 * canonical (gcd 1, positive denominator), so structural equality is
 * value equality. Construction from num/den goes through frac() which
 * canonicalizes. */
using Rational = mpq_class;

enum class errc {
	invalid_argument,
	domain,
	budget,
	saturated,
	internal,
};

class Error : public std::runtime_error {
public:
	Error(errc code, const std::string &what)
	    : std::runtime_error(what), code_(code)
	{}
	errc code() const { return code_; }

private:
	errc code_;
};

Rational frac(long num, long den = 1);

/* Canonical text form: "p" or "p/q". */
std::string rat_str(const Rational &r);

/* Parses "p" or "p/q"; rejects malformed input and zero denominators. */
Rational rat_parse(const std::string &s);

Rational factorial(unsigned n);
Rational binomial(unsigned long n, unsigned long k);

} // namespace qzk
