#include <doctest.h>

#include <random>

#include "levyheat/config.hpp"
#include "levyheat/errors.hpp"

using namespace levyheat;

TEST_CASE("parsing keys, comments and values") {
  const Config c = Config::parse_string(
      "# leading comment\n"
      "\n"
      "seed = 42\n"
      "window.T = 2.5e2   # trailing comment\n"
      "panels = continuous, 1, 0.5\n"
      "noise.atoms = 1:2, -3:0.5\n"
      "grid.refine = false\n");
  CHECK(c.get_u64("seed") == 42);
  CHECK(c.get_double("window.T") == 250.0);
  CHECK(c.line_of("window.T") == 4);
  CHECK(c.get_strings("panels") == std::vector<std::string>{"continuous", "1", "0.5"});
  CHECK_FALSE(c.get_bool("grid.refine", true));
  CHECK(c.get_double("missing", 7.0) == 7.0);
  CHECK(c.get_int("missing", 3) == 3);
}

TEST_CASE("errors carry the offending line") {
  auto line_of_error = [](const std::string& text) {
    try {
      const Config c = Config::parse_string(text);
      c.get_double("x");
      c.require_known({"x"});
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of_error("x = 1\nnot a pair\n") == 2);
  CHECK(line_of_error("x = 1\n\nx = 2\n") == 3);
  CHECK(line_of_error("# c\nx = abc\n") == 2);
  CHECK(line_of_error("x = 1\ny = 2\n") == 2);
  CHECK(line_of_error("x =\n") == 1);
  CHECK(line_of_error("bad key! = 1\n") == 1);
  try {
    Config::parse_string("a = 1\nb = 2\nc = oops\n").get_double("c");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("line 3: ", 0) == 0);
  }
  CHECK_THROWS_AS(Config::parse_string("").get_string("seed"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("seed = -1").get_u64("seed"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("b = maybe").get_bool("b", true), ConfigError);
  CHECK_THROWS_AS(Config::parse_file("/nonexistent/levyheat.cfg"), ConfigError);
}

TEST_CASE("noise blocks") {
  CHECK(parse_noise(Config::parse_string("noise.variant = standard_poisson")).drift() == 0.0);
  const NoiseSpec pt = parse_noise(Config::parse_string(
      "noise.variant = power_tail\nnoise.alpha = 1.5\nnoise.mean = 3\nnoise.sign = negative\n"));
  CHECK(pt.measure().tails().front().sign == JumpSign::Negative);
  CHECK(pt.measure().tails().front().z_min == 1.0);
  CHECK(pt.mean() == 3.0);
  try {
    parse_noise(Config::parse_string("a = 1\nnoise.variant = power_tail\nnoise.alpha = 0.5\nnoise.mean = 1\n"));
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_noise(Config::parse_string("noise.variant = gamma\n")), ConfigError);
  CHECK_THROWS_AS(parse_noise(Config::parse_string("noise.variant = dirac\nnoise.atoms = 1;2\nnoise.mean = 1\n")),
                  ConfigError);
  const SigmaSpec s = parse_sigma(Config::parse_string("sigma.variant = tanh_ramp\nsigma.k1 = 0.5\nsigma.k2 = 2\n"));
  CHECK(s.lower() == 0.5);
  CHECK(s.upper() == 2.0);
  CHECK(parse_sigma(Config::parse_string("")).is_constant());
}

TEST_CASE("noise config round-trips") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    std::vector<DiracAtom> atoms;
    std::vector<PowerTail> tails;
    const int n_atoms = static_cast<int>(3 * u(gen));
    const int n_tails = static_cast<int>(3 * u(gen));
    for (int k = 0; k < n_atoms; ++k) atoms.push_back({(u(gen) < 0.5 ? -1 : 1) * (0.1 + 5 * u(gen)), 0.01 + 3 * u(gen)});
    for (int k = 0; k < n_tails; ++k)
      tails.push_back({0.1 + u(gen), 1.0 + 1e-3 + 3 * u(gen), 1.0 + 4 * u(gen),
                       u(gen) < 0.5 ? JumpSign::Positive : JumpSign::Negative});
    if (atoms.empty() && tails.empty()) atoms.push_back({1.0, 1.0});
    const double mean = 10 * u(gen) - 5;
    const NoiseSpec original = [&] {
      if (tails.empty() && i % 2 == 0) return NoiseSpec(LevyMeasure::dirac(atoms), mean);
      if (atoms.empty() && tails.size() == 1) return NoiseSpec(LevyMeasure::power_tail(tails[0]), mean);
      return NoiseSpec(LevyMeasure::mixture(atoms, tails), mean);
    }();
    const NoiseSpec back = parse_noise(Config::parse_string(format_noise(original)));
    CHECK(back.mean() == original.mean());
    CHECK(back.drift() == original.drift());
    CHECK(back.measure().kind() == original.measure().kind());
    REQUIRE(back.measure().atoms().size() == original.measure().atoms().size());
    REQUIRE(back.measure().tails().size() == original.measure().tails().size());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      CHECK(back.measure().atoms()[k].size == original.measure().atoms()[k].size);
      CHECK(back.measure().atoms()[k].rate == original.measure().atoms()[k].rate);
    }
    for (std::size_t k = 0; k < back.measure().tails().size(); ++k) {
      const auto& a = back.measure().tails()[k];
      const auto& b = original.measure().tails()[k];
      CHECK(a.c == b.c);
      CHECK(a.alpha == b.alpha);
      CHECK(a.z_min == b.z_min);
      CHECK(a.sign == b.sign);
    }
  }
}
