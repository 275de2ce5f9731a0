#include "rpsdp/sdpa_format.hpp"

#include "rpsdp/error.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace rpsdp {

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& out, const SymMatrix& a) {
  for (const Entry& e : a.to_entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << fmt(e.value) << '\n';
}

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) toks_.push_back(tok);
    }
  }

  bool done() const { return pos_ >= toks_.size(); }
  const std::string& peek() const {
    if (done()) throw Error(ErrorKind::MalformedLine, "unexpected end of input");
    return toks_[pos_];
  }
  std::string next() {
    const std::string& t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& word) {
    const std::string t = next();
    if (t != word) throw Error(ErrorKind::MalformedLine, "expected '" + word + "', found '" + t + "'");
  }
  double number() {
    const std::string t = next();
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw Error(ErrorKind::MalformedLine, "expected a number, found '" + t + "'");
    return v;
  }
  Index integer() {
    const std::string t = next();
    long long v = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
      throw Error(ErrorKind::MalformedLine, "expected an integer, found '" + t + "'");
    return static_cast<Index>(v);
  }

 private:
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

SymMatrix read_matrix(Tokens& t, Index dim, Index nnz) {
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (Index e = 0; e < nnz; ++e) {
    const Index i = t.integer() - 1;
    const Index j = t.integer() - 1;
    const double v = t.number();
    if (i < 0 || j < 0 || i >= dim || j >= dim) throw Error(ErrorKind::MalformedLine, "matrix index out of range");
    entries.push_back({i, j, v});
  }
  if (entries.size() == 1 && entries[0].row == entries[0].col && entries[0].value == 1.0)
    return SymMatrix::unit_diagonal(dim, entries[0].row);
  return SymMatrix::from_entries(dim, std::move(entries));
}

}  // namespace

void write_sdpa(std::ostream& out, const SdpProblem& p) {
  p.validate();
  if (p.linear) throw Error(ErrorKind::InvalidParameters, "linear blocks are not serializable; write the base problem");
  out << "rpsdp-sdp 1\n";
  if (!p.name.empty()) out << "# " << p.name << '\n';
  out << "sense " << to_string(p.sense) << '\n';
  out << "dim " << p.dim() << '\n';
  out << "constraints " << p.m() << '\n';
  out << "objective " << p.c.to_entries().size() << '\n';
  write_matrix(out, p.c);
  for (Index i = 0; i < p.m(); ++i) {
    const Constraint& con = p.constraints[static_cast<std::size_t>(i)];
    out << "constraint " << i + 1 << ' ' << fmt(con.b) << ' ' << con.a.to_entries().size() << '\n';
    write_matrix(out, con.a);
  }
  if (p.dual_bounds) {
    out << "bounds\n";
    for (const DualBound& d : *p.dual_bounds) out << fmt(d.lb) << ' ' << fmt(d.ub) << '\n';
  }
  if (p.report.offset != 0.0 || p.report.scale != 1.0)
    out << "report " << fmt(p.report.offset) << ' ' << fmt(p.report.scale) << '\n';
  out << "end\n";
}

SdpProblem read_sdpa(std::istream& in) {
  Tokens t(in);
  if (t.done() || t.next() != "rpsdp-sdp") throw Error(ErrorKind::MalformedHeader, "missing 'rpsdp-sdp' header");
  if (t.integer() != 1) throw Error(ErrorKind::MalformedHeader, "unsupported format version");
  SdpProblem p;
  t.expect("sense");
  const std::string sense = t.next();
  if (sense == "min") p.sense = Sense::Minimize;
  else if (sense == "max") p.sense = Sense::Maximize;
  else throw Error(ErrorKind::MalformedLine, "sense must be min or max");
  t.expect("dim");
  const Index dim = t.integer();
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "dim must be >= 1");
  t.expect("constraints");
  const Index m = t.integer();
  if (m < 0) throw Error(ErrorKind::MalformedLine, "negative constraint count");
  t.expect("objective");
  p.c = read_matrix(t, dim, t.integer());
  p.constraints.reserve(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    t.expect("constraint");
    if (t.integer() != i + 1) throw Error(ErrorKind::MalformedLine, "constraints out of order");
    const double b = t.number();
    const Index nnz = t.integer();
    p.constraints.push_back({read_matrix(t, dim, nnz), b});
  }
  while (!t.done()) {
    const std::string word = t.next();
    if (word == "end") break;
    if (word == "bounds") {
      std::vector<DualBound> bounds(static_cast<std::size_t>(m));
      for (DualBound& d : bounds) {
        d.lb = t.number();
        d.ub = t.number();
      }
      p.dual_bounds = std::move(bounds);
    } else if (word == "report") {
      p.report.offset = t.number();
      p.report.scale = t.number();
    } else {
      throw Error(ErrorKind::MalformedLine, "unknown section '" + word + "'");
    }
  }
  p.validate();
  return p;
}

std::string to_sdpa_string(const SdpProblem& p) {
  std::ostringstream os;
  write_sdpa(os, p);
  return os.str();
}

SdpProblem from_sdpa_string(const std::string& text) {
  std::istringstream is(text);
  return read_sdpa(is);
}

}  // namespace rpsdp
