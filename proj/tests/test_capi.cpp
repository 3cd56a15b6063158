#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "tgsl/tgsl.h"

namespace {

bool file_has_header(const char* path, const char* header) {
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  return first == header;
}

}  // namespace

TEST_CASE("version and profile constants") {
  CHECK(std::strlen(tgsl_version()) > 0);
  CHECK(tgsl_profile_theta(0.0) == doctest::Approx(0.0));
  CHECK(tgsl_profile_theta(1.0) ==
        doctest::Approx(std::tanh(std::sqrt(2.0))).epsilon(1e-14));
  CHECK(tgsl_profile_theta_prime(0.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const double S = 4.0 * std::sqrt(2.0) / 3.0;
  CHECK(tgsl_surface_tension() == doctest::Approx(S).epsilon(1e-12));
  CHECK(tgsl_gibbs_thomson_coefficient() ==
        doctest::Approx(S / 2.0).epsilon(1e-12));
}

TEST_CASE("invalid arguments map to the status code and message") {
  CHECK(tgsl_profile_csv(0.0, 1.0, 1, "/tmp/capi_bad.csv") ==
        TGSL_INVALID_ARGUMENT);
  CHECK(std::strlen(tgsl_last_error()) > 0);
  CHECK(tgsl_profile_csv(0.0, 1.0, 5, nullptr) == TGSL_INVALID_ARGUMENT);
  tgsl_geometry geo{2, 0.0, 1.0, 0.5, 0.0};
  CHECK(tgsl_diffuse_csv(&geo, -0.1, 11, 1e-6, 1e-5, 1,
                         "/tmp/capi_bad.csv", nullptr) ==
        TGSL_INVALID_ARGUMENT);
}

TEST_CASE("geometry failures surface as TGSL_GEOMETRY") {
  // A tiny ball collapses into the inner guard band well before T.
  tgsl_geometry geo{2, 0.0, 1.0, 0.05, 0.0};
  CHECK(tgsl_sharp_csv(&geo, 101, 1e-4, 0.5, 100, "/tmp/capi_sharp.csv") ==
        TGSL_GEOMETRY);
  CHECK(std::strlen(tgsl_last_error()) > 0);
}

TEST_CASE("a successful call clears the error message") {
  CHECK(tgsl_profile_csv(0.0, 1.0, 1, "/tmp/capi_bad.csv") ==
        TGSL_INVALID_ARGUMENT);
  CHECK(tgsl_profile_csv(-2.0, 2.0, 5, "/tmp/capi_profile.csv") == TGSL_OK);
  CHECK(std::strlen(tgsl_last_error()) == 0);
  CHECK(file_has_header("/tmp/capi_profile.csv",
                        "z,theta,theta_p,d2f,eta,eta_p"));
}

TEST_CASE("spectral driver writes one row per epsilon") {
  const double eps[2] = {0.2, 0.1};
  CHECK(tgsl_spectral_csv(eps, 2, 801, 3, "/tmp/capi_spectral.csv") ==
        TGSL_OK);
  std::ifstream in("/tmp/capi_spectral.csv");
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);  // header + 2 data rows
}

TEST_CASE("sharp driver writes the trajectory table") {
  tgsl_geometry geo{2, 0.0, 1.0, 0.5, 0.0};
  CHECK(tgsl_sharp_csv(&geo, 201, 1e-4, 2e-3, 10, "/tmp/capi_sharp.csv") ==
        TGSL_OK);
  CHECK(file_has_header("/tmp/capi_sharp.csv",
                        "t,R,V,kappa,max_abs_mu,max_abs_sigma"));
}

TEST_CASE("converge driver rejects a bad override") {
  CHECK(tgsl_converge_run("", "no_equals_sign", "/tmp") ==
        TGSL_INVALID_ARGUMENT);
  CHECK(tgsl_converge_run("", "not_a_key=3", "/tmp") ==
        TGSL_INVALID_ARGUMENT);
}
