#include "coinweigh/rational.hpp"

#include "coinweigh/model.hpp"

#include <cstdio>
#include <stdexcept>

namespace coinweigh {

Rational make_rational(std::int64_t num, std::int64_t den)
{
	if (den == 0)
		throw InvalidInput("zero denominator");
	static_assert(sizeof(long) == sizeof(std::int64_t));
	Rational q(static_cast<long>(num), static_cast<long>(den));
	q.canonicalize();
	return q;
}

std::string to_fraction_string(const Rational& q)
{
	return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text)
{
	Rational q;
	if (q.set_str(text, 10) != 0 || q.get_den() == 0)
		throw InvalidInput("malformed rational '" + text + "'");
	q.canonicalize();
	return q;
}

double to_double(const Rational& q)
{
	return q.get_d();
}

std::string format_fixed(double value, int places)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*f", places, value);
	return buf;
}

std::string format_significant(double value, int digits)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*g", digits, value);
	return buf;
}

double round_significant(double value, int digits)
{
	return std::stod(format_significant(value, digits));
}

} // namespace coinweigh
