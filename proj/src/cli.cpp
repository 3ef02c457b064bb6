#include "srt/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>

#include "srt/harness.hpp"
#include "srt/io.hpp"
#include "srt/parallel.hpp"
#include "srt/phantom.hpp"
#include "srt/recon.hpp"

namespace srt::cli {
namespace {

struct GeometryFlags {
  double a1 = 1.0;
  double a2 = 0.8;
  double H = 2.0;
  double r0 = 4.0;
  int K = 256;
  int L = 200;
  int M = 400;

  void add_shape(CLI::App* app) {
    app->add_option("--a1", a1, "semi-axis of the detector ellipse along x1 (length)")->capture_default_str();
    app->add_option("--a2", a2, "semi-axis of the detector ellipse along x2 (length)")->capture_default_str();
    app->add_option("--H", H, "half-height of the detector cylinder (length)")->capture_default_str();
  }
  void add_sampling(CLI::App* app) {
    app->add_option("--r0", r0, "largest measured sphere radius (length)")->capture_default_str();
    app->add_option("--K", K, "number of detector angles (count, >= 4)")->capture_default_str();
    app->add_option("--L", L, "height samples per half-height, heights H*m/L for |m| <= L (count, >= 2)")
        ->capture_default_str();
    app->add_option("--M", M, "radius intervals, radii r0*l/M for 0 <= l <= M (count, >= 2)")->capture_default_str();
  }
  ScanGeometry geometry() const {
    ScanGeometry g{a1, a2, H, r0, K, L, M};
    g.validate();
    return g;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical-mean reconstruction on elliptic and circular cylinders"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads for parallel stages (count, 0 = all hardware threads)")
      ->capture_default_str();

  // phantom
  auto* ph = app.add_subcommand("phantom", "write a ball phantom file");
  std::string ph_out;
  bool ph_demo = false;
  double ph_radius = 0.5, ph_amp = 1.0;
  ph->add_option("--out", ph_out, "output phantom text file (path)")->required();
  ph->add_flag("--demo", ph_demo, "write the three-ball demo phantom instead of a single centered ball");
  ph->add_option("--radius", ph_radius, "radius of the centered ball (length)")->capture_default_str();
  ph->add_option("--amplitude", ph_amp, "value inside the centered ball (dimensionless)")->capture_default_str();

  // forward
  auto* fw = app.add_subcommand("forward", "synthesize exact spherical-mean data of a phantom");
  std::string fw_phantom, fw_out;
  GeometryFlags fw_geo;
  fw->add_option("--phantom", fw_phantom, "phantom text file (path)")->required();
  fw_geo.add_shape(fw);
  fw_geo.add_sampling(fw);
  fw->add_option("--out", fw_out, "output SRTDAT file (path)")->required();

  // rasterize
  auto* rs = app.add_subcommand("rasterize", "voxelize a phantom on the reconstruction lattice");
  std::string rs_phantom, rs_out;
  GeometryFlags rs_geo;
  int rs_nx = 100, rs_lz = 200;
  rs->add_option("--phantom", rs_phantom, "phantom text file (path)")->required();
  rs_geo.add_shape(rs);
  rs->add_option("--Nx", rs_nx, "horizontal half-width in voxels, spacing max(a1,a2)/Nx (count)")
      ->capture_default_str();
  rs->add_option("--Lz", rs_lz, "height intervals over |y| <= H/2, spacing H/Lz (count)")->capture_default_str();
  rs->add_option("--out", rs_out, "output SRTVOL file (path)")->required();

  // noise
  auto* nz = app.add_subcommand("noise", "add Gaussian noise to data");
  std::string nz_in, nz_out;
  double nz_level = 0.02;
  std::uint64_t nz_seed = 7;
  bool nz_sigma = false;
  nz->add_option("--in", nz_in, "input SRTDAT file (path)")->required();
  nz->add_option("--level", nz_level, "noise level: variance = level * max|g| (fraction, >= 0)")
      ->capture_default_str();
  nz->add_option("--seed", nz_seed, "generator seed (integer)")->capture_default_str();
  nz->add_flag("--sigma", nz_sigma, "interpret the level as standard deviation = level * max|g|");
  nz->add_option("--out", nz_out, "output SRTDAT file (path)")->required();

  // reconstruct
  auto* rc = app.add_subcommand("reconstruct", "reconstruct a volume from data");
  std::string rc_in, rc_out, rc_method = "inv3d";
  int rc_nx = 100, rc_lz = 0;
  rc->add_option("--in", rc_in, "input SRTDAT file (path)")->required();
  rc->add_option("--method", rc_method, "inv3d | ubp3d | circular")->capture_default_str();
  rc->add_option("--Nx", rc_nx, "horizontal half-width in voxels, spacing max(a1,a2)/Nx (count, >= 4)")
      ->capture_default_str();
  rc->add_option("--Lz", rc_lz, "height intervals over |y| <= H/2, spacing H/Lz (count, 4..L; default L)");
  rc->add_option("--out", rc_out, "output SRTVOL file (path)")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "print the relative L2 difference of two volumes");
  std::string cmp_a, cmp_b, cmp_mask = "interior";
  double cmp_a1 = 0.0, cmp_a2 = 0.0;
  cmp->add_option("--a", cmp_a, "volume to assess (path)")->required();
  cmp->add_option("--b", cmp_b, "reference volume (path)")->required();
  cmp->add_option("--mask", cmp_mask, "interior | shrunk")->capture_default_str();
  cmp->add_option("--a1", cmp_a1, "ellipse semi-axis along x1 for the mask (length; default Nx*dx)");
  cmp->add_option("--a2", cmp_a2, "ellipse semi-axis along x2 for the mask (length; default Nx*dx)");

  // slice
  auto* sl = app.add_subcommand("slice", "export one slice of a volume as PGM");
  std::string sl_in, sl_out, sl_axis = "horizontal";
  int sl_index = 0;
  sl->add_option("--in", sl_in, "input SRTVOL file (path)")->required();
  sl->add_option("--axis", sl_axis, "horizontal (fixed height n3) | vertical (fixed n2)")->capture_default_str();
  sl->add_option("--index", sl_index, "signed lattice index of the slice (count)")->capture_default_str();
  sl->add_option("--out", sl_out, "output PGM file (path)")->required();

  // bench
  auto* bn = app.add_subcommand("bench", "time inv3d over grid sizes and fit the log-log slope");
  std::vector<int> bn_sizes{40, 60, 80, 100};
  std::string bn_out;
  bool bn_multi = false;
  bn->add_option("--sizes", bn_sizes, "comma-separated Nx values, strictly increasing (counts)")
      ->delimiter(',')
      ->capture_default_str();
  bn->add_option("--out", bn_out, "output CSV file (path)")->required();
  bn->add_flag("--multi-thread", bn_multi, "use all worker threads instead of one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    set_num_threads(threads);
    if (*ph) {
      require(ph_radius > 0.0, ErrorCode::Validation, "--radius must be positive");
      const Phantom p = ph_demo ? Phantom::demo() : Phantom{{Ball{{0.0, 0.0, 0.0}, ph_radius, ph_amp}}};
      phantom::save(p, ph_out);
    } else if (*fw) {
      const ScanGeometry g = fw_geo.geometry();
      io::write_data(phantom::forward_data(phantom::load(fw_phantom), g), fw_out);
    } else if (*rs) {
      const ScanGeometry g{rs_geo.a1, rs_geo.a2, rs_geo.H, 1.0, 4, 2, 2};
      io::write_volume(phantom::rasterize(phantom::load(rs_phantom), rs_nx, rs_lz, g), rs_out);
    } else if (*nz) {
      const auto conv = nz_sigma ? harness::NoiseConvention::Sigma : harness::NoiseConvention::Variance;
      io::write_data(harness::add_noise(io::read_data(nz_in), nz_level, nz_seed, conv), nz_out);
    } else if (*rc) {
      const DataGrid d = io::read_data(rc_in);
      const auto req = recon::ReconRequest::make(recon::parse_method(rc_method), d.geometry(), rc_nx, rc_lz);
      io::write_volume(recon::reconstruct(d, req), rc_out);
    } else if (*cmp) {
      const Volume a = io::read_volume(cmp_a);
      const Volume b = io::read_volume(cmp_b);
      const double extent = a.shape().x(a.Nx());
      const harness::MaskSpec mask{harness::parse_mask(cmp_mask), cmp_a1 > 0.0 ? cmp_a1 : extent,
                                   cmp_a2 > 0.0 ? cmp_a2 : extent};
      out << std::setprecision(10) << harness::relative_l2(a, b, mask) << '\n';
    } else if (*sl) {
      harness::export_slice_pgm(io::read_volume(sl_in), harness::parse_axis(sl_axis), sl_index, sl_out);
    } else if (*bn) {
      const harness::BenchResult r = harness::benchmark_scaling(bn_sizes, !bn_multi);
      harness::write_bench_csv(r, bn_out);
      out << harness::bench_csv(r);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.is_io() ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace srt::cli
