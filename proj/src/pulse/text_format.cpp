#include "trispin/pulse/text_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

namespace trispin::pulse {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

class LineParser {
 public:
  LineParser(std::size_t line_no) : line_no_(line_no) {}

  [[noreturn]] void fail(std::size_t column, const std::string& msg) const {
    throw ParseError(line_no_, column, msg);
  }

  double time(const Token& t, std::string_view s) const {
    double scale = 1.0;
    std::string_view num = s;
    if (ends_with(s, "us")) {
      scale = 1e-6;
      num = s.substr(0, s.size() - 2);
    } else if (ends_with(s, "ms")) {
      scale = 1e-3;
      num = s.substr(0, s.size() - 2);
    } else if (ends_with(s, "s")) {
      num = s.substr(0, s.size() - 1);
    } else {
      fail(t.column, "time literal needs a unit (us, ms or s): '" + std::string(s) + "'");
    }
    const auto v = to_double(num);
    if (!v) fail(t.column, "bad time literal '" + std::string(s) + "'");
    if (*v < 0.0) fail(t.column, "negative duration '" + std::string(s) + "'");
    return *v * scale;
  }

  double frequency(const Token& t, std::string_view s) const {
    double scale = 1.0;
    std::string_view num = s;
    if (ends_with(s, "kHz")) {
      scale = 1e3;
      num = s.substr(0, s.size() - 3);
    } else if (ends_with(s, "Hz")) {
      num = s.substr(0, s.size() - 2);
    }
    const auto v = to_double(num);
    if (!v) fail(t.column, "bad amplitude '" + std::string(s) + "'");
    if (*v < 0.0) fail(t.column, "negative amplitude '" + std::string(s) + "'");
    return *v * scale;
  }

  double degrees(const Token& t, std::string_view s) const {
    const auto v = to_double(s);
    if (!v) fail(t.column, "bad angle '" + std::string(s) + "'");
    return *v * kDeg;
  }

  double phase(const Token& t, std::string_view s) const {
    if (s == "x") return 0.0;
    if (s == "y") return std::numbers::pi / 2.0;
    if (s == "-x") return std::numbers::pi;
    if (s == "-y") return 3.0 * std::numbers::pi / 2.0;
    return degrees(t, s);
  }

  SpinSet targets(const Token& t, std::string_view s) const {
    try {
      return SpinSet::parse(s);
    } catch (const std::out_of_range&) {
      fail(t.column, "unknown spin index in '" + std::string(s) + "'");
    } catch (const std::invalid_argument&) {
      fail(t.column, "bad spin list '" + std::string(s) + "'");
    }
  }

  int spin_index(const Token& t, std::string_view s) const {
    int k = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) fail(t.column, "bad spin index");
    if (k < 1 || k > spin::kSpinCount) fail(t.column, "unknown spin index " + std::string(s));
    return k;
  }

  // key=value arguments after the keyword.
  std::map<std::string_view, Token> keyed(const std::vector<Token>& tokens,
                                          std::initializer_list<std::string_view> allowed) const {
    std::map<std::string_view, Token> out;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto eq = tokens[i].text.find('=');
      if (eq == std::string_view::npos) fail(tokens[i].column, "expected key=value, got '" + std::string(tokens[i].text) + "'");
      const auto key = tokens[i].text.substr(0, eq);
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) fail(tokens[i].column, "unknown argument '" + std::string(key) + "'");
      if (out.contains(key)) fail(tokens[i].column, "duplicate argument '" + std::string(key) + "'");
      out.emplace(key, Token{tokens[i].text.substr(eq + 1), tokens[i].column + eq + 1});
    }
    return out;
  }

  const Token& required(const std::map<std::string_view, Token>& args, std::string_view key,
                        const Token& keyword) const {
    const auto it = args.find(key);
    if (it == args.end()) fail(keyword.column, "missing argument '" + std::string(key) + "'");
    return it->second;
  }

 private:
  std::size_t line_no_;
};

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_time(double seconds) {
  if (seconds == 0.0) return "0s";
  if (seconds >= 1.0) return format_number(seconds) + "s";
  if (seconds >= 1e-3) return format_number(seconds * 1e3) + "ms";
  return format_number(seconds * 1e6) + "us";
}

std::string format_angle(double rad) { return format_number(rad / kDeg); }

std::string format_phase(double rad) {
  double deg = std::fmod(rad / kDeg, 360.0);
  if (deg < 0.0) deg += 360.0;
  constexpr double tol = 1e-10;
  const std::pair<double, const char*> symbols[] = {{0.0, "x"}, {90.0, "y"}, {180.0, "-x"}, {270.0, "-y"}, {360.0, "x"}};
  for (const auto& [value, name] : symbols) {
    if (std::abs(deg - value) < tol) return name;
  }
  return format_number(deg);
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

PulseProgram parse_program(std::string_view text) {
  PulseProgram program;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineParser lp(line_no);

    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.empty() || body.front() != '@') continue;
      body.remove_prefix(1);
      const auto sp = body.find_first_of(" \t");
      const std::string key(body.substr(0, sp));
      const std::string_view value = sp == std::string_view::npos ? std::string_view{} : trim(body.substr(sp));
      if (key.empty()) lp.fail(1, "empty metadata key");
      if (key == "label") {
        program.set_label(std::string(value));
      } else if (key == "kappa") {
        const auto v = to_double(value);
        if (!v) lp.fail(1, "bad kappa '" + std::string(value) + "'");
        program.set_kappa(*v);
      } else {
        program.set_meta(key, std::string(value));
      }
      continue;
    }
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));

    // Columns are reported against the untrimmed line.
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());
    auto tokens = tokenize(line);
    for (auto& t : tokens) t.column += indent;
    const Token& kw = tokens.front();

    if (kw.text == "delay") {
      if (tokens.size() != 2) lp.fail(kw.column, "delay expects exactly one time literal");
      program.push(Delay{lp.time(tokens[1], tokens[1].text)});
    } else if (kw.text == "pulse") {
      const auto args = lp.keyed(tokens, {"targets", "angle", "phase"});
      HardPulse p;
      const Token& tg = lp.required(args, "targets", kw);
      p.targets = lp.targets(tg, tg.text);
      const Token& an = lp.required(args, "angle", kw);
      p.flip = lp.degrees(an, an.text);
      if (const auto it = args.find("phase"); it != args.end()) p.phase = lp.phase(it->second, it->second.text);
      program.push(p);
    } else if (kw.text == "wpulse") {
      const auto args = lp.keyed(tokens, {"targets", "amp", "dur", "phase"});
      WeakPulse w;
      const Token& tg = lp.required(args, "targets", kw);
      w.targets = lp.targets(tg, tg.text);
      const Token& amp = lp.required(args, "amp", kw);
      w.amplitude_hz = lp.frequency(amp, amp.text);
      const Token& dur = lp.required(args, "dur", kw);
      w.duration = lp.time(dur, dur.text);
      if (const auto it = args.find("phase"); it != args.end()) w.phase = lp.phase(it->second, it->second.text);
      program.push(w);
    } else if (kw.text == "zrot") {
      const auto args = lp.keyed(tokens, {"target", "angle"});
      ZRotation z;
      const Token& tg = lp.required(args, "target", kw);
      z.target = lp.spin_index(tg, tg.text);
      const Token& an = lp.required(args, "angle", kw);
      z.angle = lp.degrees(an, an.text);
      program.push(z);
    } else {
      lp.fail(kw.column, "unknown event '" + std::string(kw.text) + "'");
    }
  }
  return program;
}

std::string serialize_program(const PulseProgram& program) {
  std::string out;
  if (!program.label().empty()) out += "# @label " + program.label() + "\n";
  out += "# @kappa " + format_number(program.kappa()) + "\n";
  for (const auto& [key, value] : program.metadata()) out += "# @" + key + " " + value + "\n";
  for (const auto& e : program.events()) {
    if (const auto* p = std::get_if<HardPulse>(&e)) {
      out += "pulse targets=" + p->targets.to_string() + " angle=" + format_angle(p->flip) +
             " phase=" + format_phase(p->phase) + "\n";
    } else if (const auto* w = std::get_if<WeakPulse>(&e)) {
      out += "wpulse targets=" + w->targets.to_string() + " amp=" + format_number(w->amplitude_hz) +
             "Hz dur=" + format_time(w->duration) + " phase=" + format_phase(w->phase) + "\n";
    } else if (const auto* d = std::get_if<Delay>(&e)) {
      out += "delay " + format_time(d->duration) + "\n";
    } else if (const auto* z = std::get_if<ZRotation>(&e)) {
      out += "zrot target=" + std::to_string(z->target) + " angle=" + format_angle(z->angle) + "\n";
    }
  }
  return out;
}

}  // namespace trispin::pulse
