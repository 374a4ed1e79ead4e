#include "besselft/report_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace besselft {

namespace {

double parse_real(std::string_view text, const std::string& whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ParseError("not a number: '" + whole + "'");
  return v;
}

// JSON number, or a string for values JSON cannot hold.
std::string json_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_number(v);
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

double json_real(const nlohmann::ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw ParseError("bad number field: " + s);
  }
  return j.get<double>();
}

std::string csv_field(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n') ch = ';';
  return s;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(cplx v) {
  std::string im = format_number(v.imag());
  if (im.front() != '-') im = "+" + im;
  return format_number(v.real()) + im + "i";
}

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty complex literal");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  std::string_view body(s.data(), s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string_view re = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
  std::string_view im = split == std::string_view::npos ? body : body.substr(split);
  double imag = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im, text);
  return {re.empty() ? 0.0 : parse_real(re, text), imag};
}

std::string failure_reason(const VerificationReport& r) {
  for (const auto& d : r.diagnostics)
    if (d.rfind("failure=", 0) == 0) return d.substr(8);
  return "";
}

std::string eval_to_text(const EvalRecord& e) {
  std::ostringstream out;
  out << e.function << "\n";
  for (const auto& [name, value] : e.inputs) out << "  " << name << ": " << format_complex(value) << "\n";
  out << "  arg: " << format_number(e.arg) << "\n";
  out << "  value: " << format_complex(e.result.value) << "\n";
  out << "  err_estimate: " << format_number(e.result.err_estimate) << "\n";
  out << "  method: " << to_string(e.result.method) << "\n";
  return out.str();
}

std::string eval_to_json(const EvalRecord& e) {
  std::string out = "{\"schema_version\":" + std::to_string(kReportSchemaVersion);
  out += ",\"function\":" + json_string(e.function) + ",\"inputs\":{";
  for (std::size_t k = 0; k < e.inputs.size(); ++k) {
    if (k) out += ",";
    out += json_string(e.inputs[k].first) + ":\"" + format_complex(e.inputs[k].second) + "\"";
  }
  out += "},\"arg\":" + json_number(e.arg) + ",\"value\":\"" + format_complex(e.result.value) + "\"";
  out += ",\"err_estimate\":" + json_number(e.result.err_estimate);
  out += ",\"method\":" + json_string(std::string(to_string(e.result.method))) + "}";
  return out;
}

std::string eval_to_csv(const EvalRecord& e) {
  std::string header = "schema_version,function", row = std::to_string(kReportSchemaVersion) + "," + e.function;
  for (const auto& [name, value] : e.inputs) {
    header += "," + name;
    row += "," + format_complex(value);
  }
  header += ",arg,value_re,value_im,err_estimate,method\n";
  row += "," + format_number(e.arg) + "," + format_number(e.result.value.real()) + "," +
         format_number(e.result.value.imag()) + "," + format_number(e.result.err_estimate) + "," +
         std::string(to_string(e.result.method)) + "\n";
  return header + row;
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream out;
  out << r.identity_name << (r.pass ? " PASS" : " FAIL") << "\n";
  out << "  params:";
  for (const auto& [name, value] : r.params) out << " " << name << "=" << format_complex(value);
  out << "\n";
  out << "  lhs:     " << format_complex(r.lhs) << "\n";
  out << "  rhs:     " << format_complex(r.rhs) << "\n";
  out << "  abs_err: " << format_number(r.abs_err) << "\n";
  out << "  rel_err: " << format_number(r.rel_err) << "\n";
  out << "  tol:     " << format_number(r.tol) << "\n";
  for (const auto& d : r.diagnostics) out << "  " << d << "\n";
  return out.str();
}

std::string report_to_json(const VerificationReport& r) {
  std::string out = "{\"schema_version\":" + std::to_string(kReportSchemaVersion);
  out += ",\"identity\":" + json_string(r.identity_name) + ",\"params\":{";
  for (std::size_t k = 0; k < r.params.size(); ++k) {
    if (k) out += ",";
    out += json_string(r.params[k].first) + ":\"" + format_complex(r.params[k].second) + "\"";
  }
  out += "},\"lhs\":\"" + format_complex(r.lhs) + "\",\"rhs\":\"" + format_complex(r.rhs) + "\"";
  out += ",\"abs_err\":" + json_number(r.abs_err) + ",\"rel_err\":" + json_number(r.rel_err);
  out += ",\"tol\":" + json_number(r.tol) + ",\"pass\":" + (r.pass ? "true" : "false") + ",\"diagnostics\":[";
  for (std::size_t k = 0; k < r.diagnostics.size(); ++k) {
    if (k) out += ",";
    out += json_string(r.diagnostics[k]);
  }
  return out + "]}";
}

VerificationReport report_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw ParseError("unsupported schema_version");
    VerificationReport r;
    r.identity_name = j.at("identity").get<std::string>();
    for (const auto& [name, value] : j.at("params").items()) r.params.emplace_back(name, parse_complex(value));
    r.lhs = parse_complex(j.at("lhs").get<std::string>());
    r.rhs = parse_complex(j.at("rhs").get<std::string>());
    r.abs_err = json_real(j.at("abs_err"));
    r.rel_err = json_real(j.at("rel_err"));
    r.tol = json_real(j.at("tol"));
    r.pass = j.at("pass").get<bool>();
    for (const auto& d : j.at("diagnostics")) r.diagnostics.push_back(d.get<std::string>());
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report json: ") + e.what());
  }
}

std::string sweep_to_text(const SweepSummary& s) {
  std::string out;
  for (const auto& r : s.reports) out += report_to_text(r);
  out += "summary: " + std::to_string(s.pass_count) + "/" + std::to_string(s.reports.size()) +
         " passed, max rel_err " + format_number(s.max_rel_err) + "\n";
  return out;
}

std::string sweep_to_json(const std::string& tag, const SweepSummary& s) {
  std::string out = "{\"schema_version\":" + std::to_string(kReportSchemaVersion) +
                    ",\"identity\":" + json_string(tag) + ",\"reports\":[";
  for (std::size_t k = 0; k < s.reports.size(); ++k) {
    if (k) out += ",";
    out += report_to_json(s.reports[k]);
  }
  out += "],\"summary\":{\"points\":" + std::to_string(s.reports.size()) +
         ",\"pass_count\":" + std::to_string(s.pass_count) + ",\"max_rel_err\":" + json_number(s.max_rel_err) + "}}";
  return out;
}

std::string sweep_to_csv(const std::string& tag, const SweepSummary& s) {
  std::vector<std::string> names;
  for (const auto& [name, fallback] : identity_info(tag).params) names.push_back(name);
  std::string out = "schema_version,identity";
  for (const auto& n : names) out += "," + n;
  out += ",lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,pass,failure\n";
  for (const auto& r : s.reports) {
    out += std::to_string(kReportSchemaVersion) + "," + tag;
    for (const auto& n : names) {
      out += ",";
      for (const auto& [name, value] : r.params)
        if (name == n) out += format_complex(value);
    }
    out += "," + format_number(r.lhs.real()) + "," + format_number(r.lhs.imag());
    out += "," + format_number(r.rhs.real()) + "," + format_number(r.rhs.imag());
    out += "," + format_number(r.abs_err) + "," + format_number(r.rel_err) + "," + format_number(r.tol);
    out += std::string(",") + (r.pass ? "true" : "false") + "," + csv_field(failure_reason(r)) + "\n";
  }
  if (!s.reports.empty()) {
    out += std::to_string(kReportSchemaVersion) + ",summary";
    for (std::size_t k = 0; k < names.size(); ++k) out += ",";
    out += ",,,,,," + format_number(s.max_rel_err) + ",," + std::to_string(s.pass_count) + "/" +
           std::to_string(s.reports.size()) + ",\n";
  }
  return out;
}

}  // namespace besselft
