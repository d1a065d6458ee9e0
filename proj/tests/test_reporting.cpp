#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cvmi/closed_forms.hpp"
#include "cvmi/reporting.hpp"

using namespace cvmi;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

TEST_CASE("format_sig") {
  CHECK(format_sig(1.0) == "1");
  CHECK(format_sig(0.1) == "0.1");
  CHECK(format_sig(0.0) == "0");
  CHECK(format_sig(2.0 / 3.0) == "0.666666666667");
  CHECK(format_sig(1.5, 3) == "1.5");
}

TEST_CASE("sweep CSV layout and double-entry columns") {
  SweepRequest request;
  request.schemes = {"conj_coh_2", "1d_coh_1"};
  request.n_min = 0.0;
  request.n_max = 2.0;
  request.n_points = 5;
  request.gains = {1.0, 2.0};

  const std::string csv = run_sweep_csv(request);
  const auto rows = lines(csv);
  REQUIRE(rows.size() == 1 + 2 * 5 * 2);
  CHECK(rows[0] == "scheme,n,g,mi_bits,mi_formula_bits,abs_diff");
  CHECK(csv.back() == '\n');
  CHECK(csv.find("\r") == std::string::npos);

  // Rows sorted by (scheme, n, g); engine and formula columns agree.
  CHECK(fields(rows[1])[0] == "1d_coh_1");
  CHECK(fields(rows.back())[0] == "conj_coh_2");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = fields(rows[i]);
    REQUIRE(cells.size() == 6);
    const double engine = std::stod(cells[3]);
    const double formula = std::stod(cells[4]);
    CHECK(std::abs(engine - formula) < 1e-9);
    CHECK(std::stod(cells[5]) == doctest::Approx(std::abs(engine - formula)));
    // 12 significant digits in the CSV bound the round-trip error.
    CHECK(formula ==
          doctest::Approx(formula_mi(cells[0], std::stod(cells[1]), std::stod(cells[2])))
              .epsilon(1e-10));
  }
}

TEST_CASE("sweep CSV is byte-stable across runs and thread counts") {
  SweepRequest request;
  request.schemes = {"epr_conj_2", "2d_coh_2", "1d_sq_1"};
  request.n_points = 11;
  request.gains = {1.0, 3.0};

  request.threads = 1;
  const std::string serial = run_sweep_csv(request);
  request.threads = 4;
  const std::string parallel = run_sweep_csv(request);
  CHECK(serial == parallel);
  CHECK(run_sweep_csv(request) == serial);
}

TEST_CASE("sweep validation") {
  SweepRequest request;
  CHECK_THROWS_AS(run_sweep_csv(request), std::invalid_argument);
  request.schemes = {"not_a_scheme"};
  CHECK_THROWS_AS(run_sweep_csv(request), std::invalid_argument);
  request.schemes = {"1d_coh_1"};
  request.n_points = 0;
  CHECK_THROWS_AS(run_sweep_csv(request), std::invalid_argument);
}

TEST_CASE("figure data") {
  const auto fig2 = lines(figure_csv("fig2"));
  REQUIRE(fig2.size() >= 2);
  const auto header = fields(fig2[0]);
  REQUIRE(header.size() == 5);
  CHECK(header[0] == "n");
  // First row is the origin: every scheme carries zero information.
  const auto origin = fields(fig2[1]);
  CHECK(std::stod(origin[0]) == 0.0);
  for (std::size_t c = 1; c < origin.size(); ++c) CHECK(std::stod(origin[c]) == 0.0);
  // Spot value: conjugate coherent pairs at n = 2 give log2(5).
  for (const auto& row : fig2) {
    const auto cells = fields(row);
    if (cells[0] == "2") {
      bool checked = false;
      for (std::size_t c = 1; c < header.size(); ++c)
        if (header[c] == "conj_coh_2") {
          CHECK(std::stod(cells[c]) == doctest::Approx(std::log2(5.0)).epsilon(1e-10));
          checked = true;
        }
      CHECK(checked);
    }
  }

  const auto fig3 = lines(figure_csv("fig3"));
  const auto fig3_header = fields(fig3[0]);
  REQUIRE(fig3_header.size() == 7);
  // The unit-gain squeezed double-use curve coincides with the conjugate
  // EPR scheme.
  std::size_t col_epr = 0, col_sq = 0;
  for (std::size_t c = 1; c < fig3_header.size(); ++c) {
    if (fig3_header[c] == "epr_conj_2") col_epr = c;
    if (fig3_header[c] == "1d_sq_2_g1") col_sq = c;
  }
  REQUIRE(col_epr > 0);
  REQUIRE(col_sq > 0);
  for (std::size_t r = 1; r < fig3.size(); ++r) {
    const auto cells = fields(fig3[r]);
    CHECK(std::stod(cells[col_sq]) ==
          doctest::Approx(std::stod(cells[col_epr])).epsilon(1e-9));
  }

  const auto figA1 = lines(figure_csv("figA1"));
  const auto a1_header = fields(figA1[0]);
  CHECK(a1_header[0] == "g");
  // At g = 2 the coherent dual-use threshold is 4/(2g-1) = 4/3.
  for (const auto& row : figA1) {
    const auto cells = fields(row);
    if (cells[0] == "2") {
      for (std::size_t c = 1; c < a1_header.size() && c < cells.size(); ++c)
        if (a1_header[c].find("1d_coh_2") != std::string::npos)
          CHECK(std::stod(cells[c]) == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
    }
    // No finite squeezed-variant threshold at unit gain: empty cell. A
    // trailing empty field is simply absent from the split.
    if (cells[0] == "1") {
      for (std::size_t c = 1; c < a1_header.size(); ++c)
        if (a1_header[c].find("1d_sq_2") != std::string::npos)
          CHECK((c >= cells.size() || cells[c].empty()));
    }
  }

  CHECK_THROWS_AS(figure_csv("fig9"), std::invalid_argument);
}
