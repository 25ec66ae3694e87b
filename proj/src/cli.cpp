#include "harmconv/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "harmconv/convolution.hpp"
#include "harmconv/csv.hpp"
#include "harmconv/errors.hpp"
#include "harmconv/render.hpp"
#include "harmconv/verify.hpp"

namespace harmconv {

namespace {

constexpr std::string_view kParamKeys[] = {"a",   "b",   "alpha", "beta", "gamma",
                                           "eta", "psi", "theta", "n"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s)
    c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<double> plain_number(std::string_view s) {
  if (s.empty())
    return std::nullopt;
  if (s.front() == '+')
    s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  return v;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const int v = parse_int(text, what);
  if (v < 0)
    throw ParseError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigurationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw Error("cannot write '" + path + "'");
  f << text;
  if (!f)
    throw Error("error while writing '" + path + "'");
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string fmt(double v) { return format_real(v); }

// ---- parameter handling -------------------------------------------------

using RawParams = std::map<std::string, std::string>;

void add_param_options(CLI::App* sub, RawParams& raw) {
  for (const auto key : kParamKeys) {
    const std::string k(key);
    sub->add_option_function<std::string>(
        "--" + k, [&raw, k](const std::string& v) { raw[k] = v; },
        k == "n" ? "Dilatation power n" : "Parameter " + k + " (radians accept pi forms)");
  }
}

void apply_family_params(FamilySpec& spec, const RawParams& raw) {
  const auto reads = family_parameters(spec.kind);
  for (const auto& [key, value] : raw) {
    if (std::find(reads.begin(), reads.end(), key) == reads.end())
      throw ConfigurationError(std::string(family_name(spec.kind)) + " does not take '" + key +
                               "'");
    auto& p = spec.params;
    if (key == "n")
      p.n = parse_int(value, "n");
    else if (key == "a")
      p.a = parse_real(value);
    else if (key == "b")
      p.b = parse_real(value);
    else if (key == "alpha")
      p.alpha = parse_real(value);
    else if (key == "beta")
      p.beta = parse_real(value);
    else if (key == "gamma")
      p.gamma = parse_real(value);
    else if (key == "eta")
      p.eta = parse_real(value);
    else if (key == "theta")
      p.theta = parse_real(value);
  }
}

PommerenkeVariant parse_variant(std::string_view text) {
  const auto s = lower(trim(text));
  if (s == "plus")
    return PommerenkeVariant::Plus;
  if (s == "minus")
    return PommerenkeVariant::Minus;
  throw ParseError("target must be 'plus' or 'minus', got '" + std::string(text) + "'");
}

void set_theorem_param(TheoremParams& t, const std::string& key, double value) {
  if (key == "n") {
    if (value != std::floor(value))
      throw ParseError("n must be an integer, got " + fmt(value));
    t.n = static_cast<int>(value);
  } else if (key == "a") {
    t.a = value;
  } else if (key == "b") {
    t.b = value;
  } else if (key == "alpha") {
    t.alpha = value;
  } else if (key == "beta") {
    t.beta = value;
  } else if (key == "gamma") {
    t.gamma = value;
  } else if (key == "eta") {
    t.eta = value;
  } else if (key == "psi") {
    t.psi = value;
  } else if (key == "theta") {
    t.theta = value;
  } else {
    throw ConfigurationError("unknown parameter '" + key + "'");
  }
}

TheoremParams theorem_params(const RawParams& raw) {
  TheoremParams t;
  for (const auto& [key, value] : raw)
    set_theorem_param(t, key, key == "n" ? double(parse_int(value, "n")) : parse_real(value));
  return t;
}

std::optional<std::size_t> parse_order(const std::string& text) {
  if (text.empty() || lower(trim(text)) == "auto")
    return std::nullopt;
  const auto n = parse_count(text, "order");
  if (n < 2)
    throw InvalidOrderError("order must be at least 2, got " + std::to_string(n));
  return n;
}

bool looks_like_spec(std::string_view text) {
  const auto head = text.substr(0, text.find(':'));
  for (const auto kind : kAllFamilyKinds)
    if (family_name(kind) == head)
      return true;
  return false;
}

HarmonicMap load_map(const std::string& source, std::size_t default_order) {
  if (looks_like_spec(source))
    return build_family(parse_family_spec(source, default_order));
  return parse_coefficient_table(read_file(source));
}

GridSpec parse_grid(const std::string& radii, const std::string& angles, const GridSpec& base) {
  GridSpec g = base;
  if (!radii.empty()) {
    g.radii.clear();
    std::stringstream ss(radii);
    std::string item;
    while (std::getline(ss, item, ','))
      g.radii.push_back(parse_real(item));
  }
  if (!angles.empty())
    g.angular_count = parse_count(angles, "angles");
  g.validate();
  return g;
}

// ---- subcommands --------------------------------------------------------

struct Common {
  std::string order;
  std::string out;
  std::string config;
};

void add_common(CLI::App* sub, Common& c, std::string_view order_help) {
  sub->add_option("--order", c.order, std::string(order_help));
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--config", c.config, "Flat key=value file; flags override it");
}

struct GridFlags {
  std::string radii, angles, samples, radius;
};

void add_grid(CLI::App* sub, GridFlags& g) {
  sub->add_option("--radii", g.radii, "Comma-separated increasing radii in (0,1)");
  sub->add_option("--angles", g.angles, "Samples per circle (>= 64)");
  sub->add_option("--samples", g.samples, "Samples for the convexity check");
  sub->add_option("--radius", g.radius, "Radius of the convexity check");
}

VerifyOptions verify_options(const Common& c, const GridFlags& g, const std::string& target) {
  VerifyOptions o;
  o.grid = parse_grid(g.radii, g.angles, GridSpec{});
  o.order = parse_order(c.order).value_or(0);
  if (!g.samples.empty())
    o.convexity_samples = parse_count(g.samples, "samples");
  if (!g.radius.empty())
    o.convexity_radius = parse_real(g.radius);
  if (!(o.convexity_radius > 0.0 && o.convexity_radius < 1.0))
    throw ConfigurationError("convexity radius must lie in (0, 1)");
  if (o.convexity_samples < 64)
    throw ConfigurationError("convexity samples must be at least 64");
  if (!target.empty())
    o.minus_target = parse_variant(target);
  return o;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return kExitPass;
    case Verdict::Fail:
      return kExitFailure;
    case Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitFailure;
}

FamilySpec family_from_flags(const std::string& family, const RawParams& raw,
                             const std::string& target, std::size_t order) {
  if (family.empty())
    throw ConfigurationError("--family is required");
  auto spec = parse_family_spec(family, order);
  apply_family_params(spec, raw);
  if (!target.empty())
    spec.minus_target = parse_variant(target);
  validate(spec);
  return spec;
}

struct Range {
  std::string key;
  std::vector<double> values;
};

Range parse_range(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ParseError("range must look like key=start:stop:step, got '" + text + "'");
  Range r{trim(text.substr(0, eq)), {}};
  if (std::find(std::begin(kParamKeys), std::end(kParamKeys), r.key) == std::end(kParamKeys))
    throw ConfigurationError("unknown sweep parameter '" + r.key + "'");
  std::vector<std::string> parts;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':'))
    parts.push_back(item);
  if (parts.size() != 3)
    throw ParseError("range must look like key=start:stop:step, got '" + text + "'");
  const double start = parse_real(parts[0]), stop = parse_real(parts[1]),
               step = parse_real(parts[2]);
  if (!(step > 0.0))
    throw ParseError("range step must be positive in '" + text + "'");
  if (stop < start)
    return r;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000)
    throw ConfigurationError("range '" + text + "' has too many values");
  for (std::size_t i = 0; i < count; ++i)
    r.values.push_back(start + double(i) * step);
  return r;
}

constexpr std::string_view kSweepChecks[] = {"dilatation_sup", "dilatation_agreement",
                                             "jacobian_min",   "re_condition",
                                             "direction_convexity", "preset_reduction"};

int run_sweep(TheoremId id, const RawParams& fixed, const std::vector<std::string>& range_text,
              const VerifyOptions& options, std::string& csv) {
  // Later ranges for the same key win, so flags override the config file.
  std::map<std::string, Range> by_key;
  for (const auto& t : range_text) {
    auto r = parse_range(t);
    by_key[r.key] = std::move(r);
  }
  std::vector<Range> ranges;
  for (auto& [k, r] : by_key)
    ranges.push_back(std::move(r));

  csv.clear();
  for (const auto& r : ranges)
    csv += r.key + ",";
  csv += "in_hypothesis,verdict";
  for (const auto c : kSweepChecks)
    csv += "," + std::string(c);
  csv += ",note\n";

  bool empty = ranges.empty();
  for (const auto& r : ranges)
    empty = empty || r.values.empty();
  if (empty)
    return kExitPass;

  const TheoremParams base = theorem_params(fixed);
  Verdict overall = Verdict::Pass;
  std::vector<std::size_t> idx(ranges.size(), 0);
  while (true) {
    TheoremParams t = base;
    std::string row;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      set_theorem_param(t, ranges[i].key, ranges[i].values[idx[i]]);
      row += fmt(ranges[i].values[idx[i]]) + ",";
    }
    try {
      auto resolved = resolve_theorem(id, t);
      const bool inside = resolved.violations.empty();
      resolved.pairing.minus_target = options.minus_target;
      const auto bundle = verify_pairing(id, resolved.pairing, options);
      row += std::string(inside ? "true" : "false") + "," +
             std::string(verdict_name(bundle.verdict));
      for (const auto c : kSweepChecks) {
        row += ",";
        for (const auto& rep : bundle.reports)
          if (rep.check_name == c)
            row += std::string(verdict_name(rep.verdict)) + ":" + fmt(rep.margin);
      }
      std::string note;
      for (const auto& v : resolved.violations)
        note += (note.empty() ? "" : "; ") + v;
      row += "," + csv_safe(note);
      if (inside)
        overall = combine(overall, bundle.verdict);
    } catch (const ConfigurationError& e) {
      row += "false,error";
      for (std::size_t i = 0; i < std::size(kSweepChecks); ++i)
        row += ",";
      row += "," + csv_safe(e.what());
    }
    csv += row + "\n";

    std::size_t i = ranges.size();
    while (i > 0) {
      --i;
      if (++idx[i] < ranges[i].values.size())
        break;
      idx[i] = 0;
      if (i == 0)
        return exit_for(overall);
    }
  }
}

// ---- config -------------------------------------------------------------

std::vector<std::string> expand_config(const std::vector<std::string>& args, CLI::App& app) {
  if (args.empty())
    return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty())
    return args;
  CLI::App* sub = nullptr;
  for (auto* s : app.get_subcommands({}))
    if (s->get_name() == args[0])
      sub = s;
  if (sub == nullptr)
    return args;
  const auto entries = parse_config(read_file(path));
  std::vector<std::string> out{args[0]};
  for (const auto& e : entries) {
    if (e.key == "config" || sub->get_option_no_throw("--" + e.key) == nullptr)
      throw ParseError(path + " line " + std::to_string(e.line) + ": unknown key '" + e.key +
                       "' for " + args[0]);
    out.push_back("--" + e.key);
    out.push_back(e.value);
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

double parse_real(std::string_view text) {
  std::string s = lower(trim(text));
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  auto fail = [&]() -> double {
    throw ParseError("cannot parse number '" + std::string(text) + "'");
  };
  if (s.empty())
    return fail();
  double sign = 1.0;
  std::string body = s;
  if (body.front() == '-' || body.front() == '+') {
    sign = body.front() == '-' ? -1.0 : 1.0;
    body.erase(0, 1);
  }
  if (const auto p = body.find("pi"); p != std::string::npos) {
    std::string coef = body.substr(0, p);
    std::string rest = body.substr(p + 2);
    if (!coef.empty() && coef.back() == '*')
      coef.pop_back();
    double c = 1.0, d = 1.0;
    if (!coef.empty()) {
      const auto v = plain_number(coef);
      if (!v)
        return fail();
      c = *v;
    }
    if (!rest.empty()) {
      if (rest.front() != '/')
        return fail();
      const auto v = plain_number(rest.substr(1));
      if (!v || *v == 0.0)
        return fail();
      d = *v;
    }
    return sign * c * std::numbers::pi / d;
  }
  if (const auto p = body.find('/'); p != std::string::npos) {
    const auto num = plain_number(body.substr(0, p));
    const auto den = plain_number(body.substr(p + 1));
    if (!num || !den || *den == 0.0)
      return fail();
    return sign * *num / *den;
  }
  const auto v = plain_number(body);
  if (!v || !std::isfinite(*v))
    return fail();
  return sign * *v;
}

FamilySpec parse_family_spec(std::string_view text, std::size_t default_order) {
  const auto colon = text.find(':');
  FamilySpec spec;
  spec.kind = parse_family_kind(trim(text.substr(0, colon)));
  spec.order = default_order;
  if (colon == std::string_view::npos)
    return spec;
  RawParams raw;
  std::stringstream ss{std::string(text.substr(colon + 1))};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty())
      continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ParseError("family field '" + item + "' is not key=value");
    const auto key = trim(item.substr(0, eq));
    const auto value = trim(item.substr(eq + 1));
    if (key == "order") {
      const auto n = parse_count(value, "order");
      if (n < 2)
        throw InvalidOrderError("order must be at least 2, got " + std::to_string(n));
      spec.order = n;
    } else if (key == "target" && spec.kind == FamilyKind::MinusT) {
      spec.minus_target = parse_variant(value);
    } else {
      raw[key] = value;
    }
  }
  apply_family_params(spec, raw);
  return spec;
}

std::string format_family_spec(const FamilySpec& spec) {
  std::string s(family_name(spec.kind));
  s += ":";
  const auto& p = spec.params;
  for (const auto key : family_parameters(spec.kind)) {
    s += std::string(key) + "=";
    if (key == "n")
      s += std::to_string(p.n);
    else if (key == "a")
      s += fmt(p.a);
    else if (key == "b")
      s += fmt(p.b);
    else if (key == "alpha")
      s += fmt(p.alpha);
    else if (key == "beta")
      s += fmt(p.beta);
    else if (key == "gamma")
      s += fmt(p.gamma);
    else if (key == "eta")
      s += fmt(p.eta);
    else if (key == "theta")
      s += fmt(p.theta);
    s += ",";
  }
  if (spec.kind == FamilyKind::MinusT)
    s += std::string("target=") +
         (spec.minus_target == PommerenkeVariant::Plus ? "plus" : "minus") + ",";
  s += "order=" + std::to_string(spec.order);
  return s;
}

std::vector<ConfigEntry> parse_config(std::string_view text) {
  std::vector<ConfigEntry> out;
  std::stringstream ss{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(ss, line)) {
    ++no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto t = trim(line);
    if (t.empty())
      continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(no) + ": expected key=value");
    auto key = trim(t.substr(0, eq));
    if (key.rfind("--", 0) == 0)
      key.erase(0, 2);
    if (key.empty())
      throw ParseError("config line " + std::to_string(no) + ": empty key");
    out.push_back({no, key, trim(t.substr(eq + 1))});
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar harmonic mappings: shear construction, convolution, verification",
               "harmconv"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // build
  Common build_c;
  RawParams build_p;
  std::string build_family_arg, build_target;
  auto* build = app.add_subcommand("build", "Build a family by shear; print its coefficients");
  add_common(build, build_c, "Truncation order (default 128)");
  build->add_option("--family", build_family_arg, "Family name or kind:key=value,... spec");
  build->add_option("--target", build_target, "Pommerenke variant for minus-t (plus|minus)");
  add_param_options(build, build_p);

  // convolve
  Common conv_c;
  std::string conv_left, conv_right;
  auto* conv = app.add_subcommand("convolve", "Harmonic convolution of two maps");
  add_common(conv, conv_c, "Order for family specs (default 128)");
  conv->add_option("--left", conv_left, "Family spec or coefficient CSV")->required();
  conv->add_option("--right", conv_right, "Family spec or coefficient CSV")->required();

  // verify
  Common ver_c;
  RawParams ver_p;
  GridFlags ver_g;
  std::string ver_theorem, ver_target, ver_map, ver_psi;
  auto* ver = app.add_subcommand("verify", "Verify a theorem instance or scan a map");
  add_common(ver, ver_c, "Truncation order (default: chosen from the tail bound)");
  ver->add_option("--theorem", ver_theorem, "t2.3, t3.2, t1.3 ... t1.9");
  ver->add_option("--target", ver_target, "Pommerenke variant for the minus setting");
  ver->add_option("--map", ver_map, "Family spec or coefficient CSV to scan instead");
  ver->add_option("--direction", ver_psi, "Direction angle for --map convexity");
  add_param_options(ver, ver_p);
  add_grid(ver, ver_g);

  // sweep
  Common sw_c;
  RawParams sw_p;
  GridFlags sw_g;
  std::string sw_theorem, sw_target;
  std::vector<std::string> sw_ranges;
  auto* sw = app.add_subcommand("sweep", "Verify a theorem over parameter ranges");
  add_common(sw, sw_c, "Truncation order (default: chosen from the tail bound)");
  sw->add_option("--theorem", sw_theorem, "t2.3, t3.2, t1.3 ... t1.9")->required();
  sw->add_option("--target", sw_target, "Pommerenke variant for the minus setting");
  sw->add_option("--range", sw_ranges, "key=start:stop:step (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  add_param_options(sw, sw_p);
  add_grid(sw, sw_g);

  // render
  Common ren_c;
  RawParams ren_p;
  std::string ren_family, ren_target, ren_map, ren_guide;
  std::string ren_radial, ren_circles, ren_max, ren_samples, ren_width, ren_height, ren_stroke,
      ren_stroke_width;
  auto* ren = app.add_subcommand("render", "Render the image of a disk grid to SVG");
  add_common(ren, ren_c, "Truncation order (default: chosen from the tail bound)");
  ren->add_option("--family", ren_family, "Family name or spec");
  ren->add_option("--target", ren_target, "Pommerenke variant for minus-t");
  ren->add_option("--map", ren_map, "Family spec or coefficient CSV");
  ren->add_option("--guide", ren_guide, "Overlay lines parallel to e^{i psi}");
  ren->add_option("--radial-lines", ren_radial, "Radial segments (default 24)");
  ren->add_option("--circles", ren_circles, "Concentric circles (default 12)");
  ren->add_option("--max-radius", ren_max, "Outermost radius (default 0.99)");
  ren->add_option("--samples", ren_samples, "Samples per curve (default 720)");
  ren->add_option("--width", ren_width, "Canvas width in pixels");
  ren->add_option("--height", ren_height, "Canvas height in pixels");
  ren->add_option("--stroke", ren_stroke, "Curve colour");
  ren->add_option("--stroke-width", ren_stroke_width, "Stroke width in pixels");
  add_param_options(ren, ren_p);

  try {
    auto expanded = expand_config(args, app);
    std::reverse(expanded.begin(), expanded.end());
    try {
      app.parse(expanded);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitPass : kExitConfiguration;
    }

    if (build->parsed()) {
      const auto order = parse_order(build_c.order).value_or(kDefaultOrder);
      const auto spec = family_from_flags(build_family_arg, build_p, build_target, order);
      emit(build_c.out, coefficient_table_csv(build_family(spec)), out);
      return kExitPass;
    }

    if (conv->parsed()) {
      const auto order = parse_order(conv_c.order).value_or(kDefaultOrder);
      const auto result = harmonic_convolve(load_map(conv_left, order), load_map(conv_right, order),
                                            conv_left + " * " + conv_right);
      if (!result.note.empty())
        err << "note: " << result.note << "\n";
      emit(conv_c.out, coefficient_table_csv(result.map), out);
      return kExitPass;
    }

    if (ver->parsed()) {
      if (ver_theorem.empty() == ver_map.empty())
        throw ConfigurationError("verify needs exactly one of --theorem and --map");
      auto options = verify_options(ver_c, ver_g, ver_target);
      if (!ver_theorem.empty()) {
        const auto bundle =
            verify_theorem(parse_theorem_id(ver_theorem), theorem_params(ver_p), options);
        emit(ver_c.out, reports_to_csv(bundle.reports), out);
        return exit_for(bundle.verdict);
      }
      if (!ver_p.empty())
        throw ConfigurationError("theorem parameters do not apply to --map");
      const auto map = load_map(ver_map, options.order != 0 ? options.order : auto_order());
      // A bare map has only its series: stay inside the crossover unless told otherwise.
      const GridSpec grid =
          ver_g.radii.empty() ? options.grid.up_to(kSeriesCrossover) : options.grid;
      std::vector<VerificationReport> reports;
      reports.push_back(jacobian_min_scan(map, grid));
      try {
        reports.push_back(dilatation_sup_scan(dilatation_series(map), grid));
      } catch (const DegenerateMapError& e) {
        VerificationReport r;
        r.check_name = "dilatation_sup";
        r.verdict = Verdict::Inconclusive;
        r.margin = std::nan("");
        r.grid = grid;
        r.notes = e.what();
        reports.push_back(std::move(r));
      }
      if (!ver_psi.empty())
        reports.push_back(direction_convexity_check(map, parse_real(ver_psi),
                                                    options.convexity_radius,
                                                    options.convexity_samples));
      Verdict v = Verdict::Pass;
      for (const auto& r : reports)
        v = combine(v, r.verdict);
      emit(ver_c.out, reports_to_csv(reports), out);
      return exit_for(v);
    }

    if (sw->parsed()) {
      const auto options = verify_options(sw_c, sw_g, sw_target);
      std::string csv;
      const int code = run_sweep(parse_theorem_id(sw_theorem), sw_p, sw_ranges, options, csv);
      emit(sw_c.out, csv, out);
      return code;
    }

    if (ren->parsed()) {
      const auto order = parse_order(ren_c.order).value_or(auto_order());
      HarmonicMap map;
      if (!ren_map.empty()) {
        if (!ren_family.empty() || !ren_p.empty())
          throw ConfigurationError("--map cannot be combined with --family or parameters");
        map = load_map(ren_map, order);
      } else {
        map = build_family(family_from_flags(ren_family, ren_p, ren_target, order));
      }
      RenderSpec spec;
      if (!ren_radial.empty())
        spec.radial_lines = parse_count(ren_radial, "radial-lines");
      if (!ren_circles.empty())
        spec.circles = parse_count(ren_circles, "circles");
      if (!ren_max.empty())
        spec.max_radius = parse_real(ren_max);
      if (!ren_samples.empty())
        spec.samples_per_curve = parse_count(ren_samples, "samples");
      if (!ren_width.empty())
        spec.width = parse_real(ren_width);
      if (!ren_height.empty())
        spec.height = parse_real(ren_height);
      if (!ren_stroke.empty())
        spec.stroke = ren_stroke;
      if (!ren_stroke_width.empty())
        spec.stroke_width = parse_real(ren_stroke_width);
      if (!ren_guide.empty())
        spec.direction_guide = parse_real(ren_guide);
      emit(ren_c.out, render_svg(map, spec), out);
      return kExitPass;
    }
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfiguration;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfiguration;
}

}  // namespace harmconv
