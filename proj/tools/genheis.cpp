#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "genheis/io.hpp"
#include "genheis/suite.hpp"
#include "genheis/verify.hpp"

using namespace genheis;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

struct Options
{
	std::string algebra = "so";
	int n = 3;
	std::string metric;
	int degree = 4;
	std::string format = "text";
	std::string kappa;
	std::string constants;
	std::string from;
	std::uint64_t seed = 1;
	unsigned jobs = 1;
	bool all = false;
	bool no_timing = false;
	int mutate = 0;
	// matrix
	std::string which = "k";
	int power = 1;
	// bernoulli
	unsigned k = 0;
	bool psi = false;
	// oracle
	int mmax = 0;
};

json read_json_file(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw UsageError("cannot open " + path);
	try
	{
		return json::parse(in);
	}
	catch (json::exception const &e)
	{
		throw UsageError(path + ": " + e.what());
	}
}

std::vector<Rational> parse_kappa(std::string const &text)
{
	std::vector<Rational> a;
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
		a.push_back(parse_rational(item));
	if (a.empty())
		throw UsageError("--kappa needs at least one component");
	return a;
}

SuiteRequest request(Options const &o)
{
	SuiteRequest q;
	q.algebra = o.algebra;
	q.n = o.n;
	q.degree = o.degree;
	if (!o.metric.empty())
		q.metric = parse_metric_kind(o.metric);
	if (!o.kappa.empty())
	{
		q.kappa = parse_kappa(o.kappa);
		q.n = static_cast<int>(q.kappa.size());
	}
	if (!o.constants.empty())
		q.constants = structure_constants_from_json(read_json_file(o.constants));
	return q;
}

std::string text_report(BracketReport const &rep, bool timing)
{
	std::ostringstream os;
	os << rep.suite << " n=" << rep.n << " metric=" << to_string(rep.metric)
	   << " degree=" << rep.degree << " cmpDegree=" << rep.cmp_degree
	   << " pairs=" << rep.pairs.size() << " failures=" << rep.failures();
	if (timing)
		os << " elapsedMs=" << static_cast<long long>(rep.elapsed_ms);
	os << " " << (rep.pass ? "PASS" : "FAIL") << "\n";
	for (auto const &p : rep.pairs)
		if (!p.residual.is_zero())
			os << "  [" << to_string(p.g1) << ", " << to_string(p.g2)
			   << "] residual (" << p.residual.size()
			   << " terms): " << to_string(p.residual) << "\n";
	return os.str();
}

/// Realization / presentation for verify: either built from flags or read from
/// a dump whose "algebra" field names the presentation.
Suite suite_for(Options const &o)
{
	if (o.from.empty())
		return make_suite(request(o));
	Realization r = realization_from_json(read_json_file(o.from));
	SuiteRequest q = request(o);
	q.algebra = r.name();
	q.n = r.algebra().dim();
	q.degree = 1;
	if (q.algebra == "kappa" && q.kappa.empty())
		throw UsageError("verifying a kappa dump needs --kappa");
	Suite s = make_suite(q);
	s.realization = std::move(r);
	return s;
}

std::vector<SuiteRequest> battery()
{
	std::vector<SuiteRequest> out;
	auto add = [&](std::string alg, int n, int d) {
		SuiteRequest q;
		q.algebra = std::move(alg);
		q.n = n;
		q.degree = d;
		out.push_back(std::move(q));
	};
	for (int n : {2, 3, 4})
		add("so", n, 4);
	add("lorentz", 4, 4);
	for (int n : {3, 4})
	{
		add("extended-so", n, 4);
		add("extended-lorentz", n, 4);
	}
	add("poincare", 4, 3);
	add("extended-poincare", 4, 3);
	SuiteRequest k;
	k.algebra = "kappa";
	k.n = 3;
	k.degree = 5;
	k.kappa = {0, 0, make_rational(1, 5)};
	out.push_back(k);
	add("weyl-generic", 3, 5);
	return out;
}

// Corrupts one coefficient per trial and counts how many corruptions the
// bracket check catches. Passing requires the unmodified suites to pass and
// every corruption to be detected.
int mutation_run(Options const &o, bool clean)
{
	std::mt19937_64 rng(o.seed);
	std::vector<SuiteRequest> qs;
	if (o.all)
		qs = battery();
	std::vector<Suite> suites;
	std::vector<int> degrees;
	// a one-generator suite has no bracket a corruption could break
	if (o.all)
		for (auto const &q : qs)
		{
			Suite s = make_suite(q);
			if (s.presentation.generators().size() < 2)
				continue;
			suites.push_back(std::move(s));
			degrees.push_back(q.degree);
		}
	else
	{
		suites.push_back(suite_for(o));
		degrees.push_back(o.from.empty() ? o.degree : suites.back().realization.degree());
	}
	int detected = 0;
	json missed = json::array();
	for (int t = 0; t < o.mutate; ++t)
	{
		std::size_t const i = static_cast<std::size_t>(t) % suites.size();
		std::string what;
		Realization m = mutate(suites[i].realization, rng, &what);
		if (!check_bracket(m, suites[i].presentation, degrees[i], suites[i].name, o.jobs).pass)
			++detected;
		else
			missed.push_back(suites[i].name + " " + what);
	}
	bool const pass = clean && detected == o.mutate;
	if (o.format == "json")
	{
		json j;
		j["seed"] = o.seed;
		j["trials"] = o.mutate;
		j["detected"] = detected;
		j["cleanPass"] = clean;
		j["missed"] = missed;
		j["pass"] = pass;
		std::cout << j.dump(2) << "\n";
	}
	else
	{
		std::cout << "mutation seed=" << o.seed << " trials=" << o.mutate
		          << " detected=" << detected << " clean=" << (clean ? "PASS" : "FAIL") << " "
		          << (pass ? "PASS" : "FAIL") << "\n";
		for (auto const &m : missed)
			std::cout << "  missed " << m.get<std::string>() << "\n";
	}
	return pass ? exit_ok : exit_fail;
}

int cmd_verify(Options const &o)
{
	std::vector<BracketReport> reports;
	if (o.all)
	{
		for (auto const &q : battery())
		{
			Suite s = make_suite(q);
			reports.push_back(check_bracket(s.realization, s.presentation, q.degree,
			                                s.name, o.jobs));
		}
	}
	else
	{
		Suite s = suite_for(o);
		int const d = o.from.empty() ? o.degree : s.realization.degree();
		reports.push_back(
		    check_bracket(s.realization, s.presentation, d, s.name, o.jobs));
	}
	bool pass = true;
	for (auto const &r : reports)
		pass = pass && r.pass;
	if (o.mutate > 0)
		return mutation_run(o, pass);
	bool const timing = !o.no_timing;
	if (o.format == "json")
	{
		if (o.all)
		{
			json arr = json::array();
			for (auto const &r : reports)
				arr.push_back(report_to_json(r, timing));
			std::cout << arr.dump(2) << "\n";
		}
		else
			std::cout << report_to_json(reports.front(), timing).dump(2) << "\n";
	}
	else
		for (auto const &r : reports)
			std::cout << text_report(r, timing);
	return pass ? exit_ok : exit_fail;
}

void print_realization(Realization const &r, std::string const &format)
{
	if (format == "json")
	{
		std::cout << realization_to_json(r).dump(2) << "\n";
		return;
	}
	std::cout << r.name() << " n=" << r.algebra().dim()
	          << " metric=" << to_string(r.algebra().metric().kind())
	          << " degree=" << r.degree() << "\n";
	for (auto const &[l, v] : r.values())
		std::cout << to_string(l) << " = " << to_string(v) << "\n";
}

int cmd_realize(Options const &o)
{
	if (!o.from.empty())
		print_realization(realization_from_json(read_json_file(o.from)), o.format);
	else
		print_realization(make_suite(request(o)).realization, o.format);
	return exit_ok;
}

int cmd_matrix(Options const &o)
{
	MetricKind kind = o.metric.empty() ? MetricKind::Euclidean
	                                   : parse_metric_kind(o.metric);
	Algebra alg = Algebra::heisenberg(o.n, kind);
	OpMatrix m = [&] {
		if (o.which == "k")
			return k_matrix(alg);
		if (o.which == "partial")
			return partial_matrix(alg);
		if (o.which == "k-power")
			return closed_form_k_power(alg, o.power);
		if (o.which == "psi-k")
			return psi_of(k_matrix(alg), o.degree);
		if (o.which == "exp")
			return exp_partial(alg, o.degree);
		throw UsageError("unknown matrix '" + o.which + "'");
	}();
	if (o.format == "json")
		std::cout << matrix_to_json(m).dump(2) << "\n";
	else
		for (std::size_t r = 0; r < m.rows().size(); ++r)
			for (std::size_t c = 0; c < m.cols().size(); ++c)
				if (!m.at(r, c).is_zero())
					std::cout << index_to_string(m.rows(), r) << " "
					          << index_to_string(m.cols(), c) << " : "
					          << to_string(m.at(r, c)) << "\n";
	return exit_ok;
}

int cmd_bernoulli(Options const &o)
{
	Rational v = o.psi ? psi_coeff(o.k) : bernoulli(o.k);
	if (o.format == "json")
		std::cout << json{{"k", o.k}, {o.psi ? "psi" : "bernoulli", to_string(v)}}.dump()
		          << "\n";
	else
		std::cout << to_string(v) << "\n";
	return exit_ok;
}

int cmd_oracle(Options const &o)
{
	MetricKind kind = o.metric.empty() ? MetricKind::Euclidean
	                                   : parse_metric_kind(o.metric);
	OracleResult res;
	if (o.which == "a1")
		res = prop_a1_check(o.n, o.mmax > 0 ? o.mmax : 6, kind);
	else if (o.which == "a3")
		res = prop_a3_check(o.n, o.mmax > 0 ? o.mmax : 5);
	else if (o.which == "lambda")
		res = lambda_group_check(o.n, kind, o.degree);
	else if (o.which == "weyl")
	{
		GammaCoeffs g = gamma_canonical(o.n);
		std::mt19937_64 rng(o.seed);
		std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
		std::vector<Rational> k;
		for (int a = 0; a < g.count(); ++a)
			k.push_back(make_rational(num(rng), den(rng)));
		res = weyl_property_check(g, k, o.mmax > 0 ? o.mmax : 3);
	}
	else if (o.which == "path")
	{
		Realization direct = realize_so(o.n, o.degree);
		res.record(gamma_transport(gamma_canonical(o.n), o.degree) == direct,
		           "canonical transport differs");
		if (o.n == 3)
			res.record(gamma_transport(gamma_epsilon(), o.degree) == direct,
			           "epsilon transport differs");
	}
	else if (o.which == "kappa")
	{
		std::vector<Rational> a =
		    o.kappa.empty() ? std::vector<Rational>{0, 0, make_rational(1, 5)}
		                    : parse_kappa(o.kappa);
		Realization closed = realize_kappa_closed(a, o.degree);
		Realization series = realize_kappa_series(a, o.degree);
		res.record(closed == series, "closed form differs from the Weyl series");
	}
	else
		throw UsageError("unknown oracle '" + o.which + "'");
	if (o.format == "json")
		std::cout << json{{"oracle", o.which},
		                  {"pass", res.pass},
		                  {"checks", res.checks},
		                  {"firstFailure", res.first_failure}}
		                 .dump(2)
		          << "\n";
	else
		std::cout << o.which << " checks=" << res.checks << " "
		          << (res.pass ? "PASS" : "FAIL " + res.first_failure) << "\n";
	return res.pass ? exit_ok : exit_fail;
}

} // namespace

int main(int argc, char **argv)
{
	self_test();
	Options o;
	CLI::App app{"Realizations of so(n), Lorentz and Poincare algebras in "
	             "generalized Heisenberg algebras"};
	app.require_subcommand(1);

	auto common = [&](CLI::App *sub) {
		sub->add_option("--n", o.n, "dimension")->check(CLI::Range(1, 12));
		sub->add_option("--metric", o.metric, "euclidean or minkowski")
		    ->check(CLI::IsMember({"euclidean", "minkowski"}));
		sub->add_option("--degree", o.degree, "truncation degree D")
		    ->check(CLI::Range(0, 64));
		sub->add_option("--format", o.format, "text or json")
		    ->check(CLI::IsMember({"text", "json"}));
	};
	auto algebra_opts = [&](CLI::App *sub) {
		sub->add_option("--algebra", o.algebra)->check(CLI::IsMember(suite_names()));
		sub->add_option("--kappa", o.kappa, "comma separated rationals, e.g. 0,0,1/5");
		sub->add_option("--constants", o.constants,
		                "structure constants JSON for weyl-generic");
		sub->add_option("--from", o.from, "realization JSON dump");
	};

	auto *verify = app.add_subcommand("verify", "check the bracket relations");
	common(verify);
	algebra_opts(verify);
	verify->add_flag("--all", o.all, "run every suite");
	verify->add_option("--jobs", o.jobs, "concurrent pair checks")
	    ->check(CLI::Range(1u, 256u));
	verify->add_flag("--no-timing", o.no_timing, "omit elapsed time");
	verify->add_option("--mutate", o.mutate,
	                   "also run this many single-coefficient corruption trials")
	    ->check(CLI::Range(0, 100000));
	verify->add_option("--seed", o.seed, "seed for --mutate");

	auto *realize = app.add_subcommand("realize", "print a realization");
	common(realize);
	algebra_opts(realize);

	auto *matrix = app.add_subcommand("matrix", "print an operator matrix");
	common(matrix);
	matrix->add_option("--which", o.which, "k, partial, k-power, psi-k or exp")
	    ->check(CLI::IsMember({"k", "partial", "k-power", "psi-k", "exp"}));
	matrix->add_option("--power", o.power)->check(CLI::Range(0, 64));

	auto *bern = app.add_subcommand("bernoulli", "Bernoulli numbers, B_1 = -1/2");
	bern->add_option("--k", o.k)->required();
	bern->add_flag("--psi", o.psi, "print the coefficient of t^k in t/(1-e^-t)");
	bern->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

	auto *oracle = app.add_subcommand("oracle", "run an independent identity check");
	common(oracle);
	oracle->add_option("--which", o.which, "a1, a3, lambda, weyl, path or kappa")
	    ->check(CLI::IsMember({"a1", "a3", "lambda", "weyl", "path", "kappa"}))
	    ->required();
	oracle->add_option("--mmax", o.mmax)->check(CLI::Range(0, 12));
	oracle->add_option("--kappa", o.kappa);
	oracle->add_option("--seed", o.seed);

	try
	{
		app.parse(argc, argv);
	}
	catch (CLI::CallForHelp const &e)
	{
		return app.exit(e);
	}
	catch (CLI::ParseError const &e)
	{
		app.exit(e);
		return exit_usage;
	}

	try
	{
		if (*verify)
			return cmd_verify(o);
		if (*realize)
			return cmd_realize(o);
		if (*matrix)
			return cmd_matrix(o);
		if (*bern)
			return cmd_bernoulli(o);
		return cmd_oracle(o);
	}
	catch (UsageError const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
	catch (std::invalid_argument const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
	catch (std::domain_error const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
	catch (std::out_of_range const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return exit_usage;
	}
}
