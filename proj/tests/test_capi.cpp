#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qzk.h"

#include <json.hpp>

#include <string>

namespace {

std::string take(char *s)
{
	std::string out = s ? s : "";
	qzk_string_free(s);
	return out;
}

} // namespace

TEST_CASE("options defaults")
{
	qzk_options o;
	qzk_options_init(&o);
	CHECK(o.order == -1);
	CHECK(o.degree == -1);
	CHECK(o.ybound == -1);
	CHECK(o.budget_terms > 0);
	CHECK(o.certify_steps == 0);
	CHECK(o.with_ab == 0);
}

TEST_CASE("series constructors and accessors")
{
	int idx[] = {2};
	qzk_series *s = nullptr;
	REQUIRE(qzk_zvalue(idx, 1, 6, &s) == QZK_OK);
	CHECK(qzk_series_order(s) == 6);

	char *json = nullptr;
	REQUIRE(qzk_series_json(s, &json) == QZK_OK);
	/* Golden string: byte-stable canonical encoding. */
	CHECK(take(json) == R"({"N":6,"coeffs":["0","1","3","4","7","6","12"]})");

	char *coeff = nullptr;
	REQUIRE(qzk_series_coeff(s, 4, &coeff) == QZK_OK);
	CHECK(take(coeff) == "7");
	CHECK(qzk_series_coeff(s, 9, &coeff) == QZK_EINVAL);
	qzk_series_free(s);

	int bad[] = {1};
	qzk_series *t = nullptr;
	CHECK(qzk_zvalue(bad, 1, 6, &t) == QZK_EINVAL);
	CHECK(std::string(qzk_last_error()).find(">= 2") != std::string::npos);

	qzk_series *g = nullptr;
	REQUIRE(qzk_eisenstein(2, 8, &g) == QZK_OK);
	REQUIRE(qzk_series_coeff(g, 0, &coeff) == QZK_OK);
	CHECK(take(coeff) == "-1/24");
	qzk_series_free(g);

	int s2[] = {2}, r2[] = {1};
	qzk_series *bb = nullptr;
	REQUIRE(qzk_bibracket(s2, r2, 1, 5, &bb) == QZK_OK);
	char *text = nullptr;
	REQUIRE(qzk_series_text(bb, &text) == QZK_OK);
	CHECK(take(text) == "1*q + 4*q^2 + 6*q^3 + 12*q^4 + 10*q^5 + O(q^6)");
	qzk_series_free(bb);

	CHECK(qzk_bracket(nullptr, 0, 4, &s) == QZK_OK); // empty index: 1
	qzk_series_free(s);
	CHECK(qzk_bracket(nullptr, 2, 4, &s) == QZK_EINVAL);
	CHECK(qzk_zvalue(idx, 1, 6, nullptr) == QZK_EINVAL);
}

TEST_CASE("trace handles and coefficient extraction")
{
	qzk_options o;
	qzk_options_init(&o);
	o.order = 12;
	o.degree = 2;
	qzk_elem *e = nullptr;
	REQUIRE(qzk_trace_build("lemma31", &o, &e) == QZK_OK);

	char *coeff = nullptr;
	REQUIRE(qzk_elem_coeff_json(e, "z*w", &coeff) == QZK_OK);
	auto j = nlohmann::json::parse(take(coeff));
	/* Must equal -[2]. */
	int two[] = {2};
	qzk_series *b2 = nullptr;
	REQUIRE(qzk_bracket(two, 1, 12, &b2) == QZK_OK);
	char *b2json = nullptr;
	REQUIRE(qzk_series_json(b2, &b2json) == QZK_OK);
	auto jb = nlohmann::json::parse(take(b2json));
	for (int k = 0; k <= 12; ++k) {
		auto got = j["coeff"]["1"]["coeffs"][k].get<std::string>();
		auto want = jb["coeffs"][k].get<std::string>();
		if (want != "0")
			want = want[0] == '-' ? want.substr(1) : "-" + want;
		CHECK(got == want);
	}
	qzk_series_free(b2);

	char *full = nullptr;
	REQUIRE(qzk_elem_json(e, &full) == QZK_OK);
	auto jf = nlohmann::json::parse(take(full));
	CHECK(jf["q_order"] == 12);
	CHECK(jf["formal_vars"] == nlohmann::json::array({"z", "w"}));
	qzk_elem_free(e);

	CHECK(qzk_trace_build("nope", &o, &e) == QZK_EINVAL);
}

TEST_CASE("y0 extraction through the C surface")
{
	qzk_options o;
	qzk_options_init(&o);
	o.order = 8;
	o.degree = 4;
	qzk_elem *e = nullptr;
	REQUIRE(qzk_trace_build("pn:2", &o, &e) == QZK_OK);
	qzk_elem *reduced = nullptr;
	REQUIRE(qzk_elem_y0(e, &reduced) == QZK_OK);
	char *coeff = nullptr;
	REQUIRE(qzk_elem_coeff_json(reduced, "z1_12*z2_12*v1_12*v2_12", &coeff) ==
	        QZK_OK);
	auto j = nlohmann::json::parse(take(coeff));
	/* 2 [3|1]: the q^2 coefficient collects (u,v) = (1,2) and (2,1),
	 * giving 2 * (2 + 1) = 6. */
	CHECK(j["coeff"]["1"]["coeffs"][2].get<std::string>() == "6");
	qzk_elem_free(e);
	qzk_elem_free(reduced);

	/* A y-bound below the order must refuse y0 extraction. */
	o.ybound = 3;
	REQUIRE(qzk_trace_build("pn:2", &o, &e) == QZK_OK);
	CHECK(qzk_elem_y0(e, &reduced) == QZK_ESATURATED);
	qzk_elem_free(e);
}

TEST_CASE("reduce through the C surface")
{
	const char *spec = R"({
		"constraint": "eq",
		"chains": [
			{"low": 0, "strict": false, "group": "A",
			 "vars": [{"u": 0, "t": 1}]},
			{"low": 1, "strict": false, "group": "B",
			 "vars": [{"u": 0, "t": 1}]}
		]})";
	char *report = nullptr;
	REQUIRE(qzk_reduce(spec, 15, nullptr, &report) == QZK_OK);
	auto j = nlohmann::json::parse(take(report));
	CHECK(j["certificate"]["equal"] == true);
	CHECK(j["all_qbd"] == true);
	REQUIRE(j["combination"]["terms"].size() == 1);
	CHECK(j["combination"]["terms"][0]["coeff"] == "2");
	CHECK(j["combination"]["terms"][0]["factors"][0]["s"] ==
	      nlohmann::json::array({3}));

	CHECK(qzk_reduce("not json", 15, nullptr, &report) == QZK_EINVAL);
}

TEST_CASE("verify and relations through the C surface")
{
	qzk_options o;
	qzk_options_init(&o);
	o.order = 16;
	o.degree = 3;
	char *report = nullptr;
	int passed = 0;
	REQUIRE(qzk_verify("lemma31", &o, &report, &passed) == QZK_OK);
	CHECK(passed == 1);
	auto j = nlohmann::json::parse(take(report));
	CHECK(j["passed"] == true);

	REQUIRE(qzk_relations("MD", 3, 40, &report) == QZK_OK);
	auto jr = nlohmann::json::parse(take(report));
	CHECK(jr["kernel"].empty());
	CHECK(jr["note"].get<std::string>().find("candidate") !=
	      std::string::npos);
	CHECK(qzk_relations("nope", 3, 40, &report) == QZK_EINVAL);
}

TEST_CASE("status names")
{
	CHECK(std::string(qzk_status_name(QZK_OK)) == "ok");
	CHECK(std::string(qzk_status_name(QZK_EBUDGET)) == "budget exceeded");
	qzk_string_free(nullptr);
	qzk_series_free(nullptr);
	qzk_elem_free(nullptr);
}
