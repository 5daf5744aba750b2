#include "cqlearn/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cqlearn/errors.hpp"

namespace cqlearn {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool is_comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!is_comment_or_blank(line)) lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write file: " + path);
  out << text;
}

DensityMatrix parse_state_text(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw SpecError("state file: empty");
  auto head = tokenize(lines[0]);
  if (!head.empty() && head[0] == "dim") head.erase(head.begin());
  if (head.size() != 1) throw SpecError("state file: first line must be the dimension");
  int dim = 0;
  try {
    dim = std::stoi(head[0]);
  } catch (...) {
    throw SpecError("state file: bad dimension '" + head[0] + "'");
  }
  if (dim < 1) throw SpecError("state file: dimension must be >= 1");
  if (lines.size() != std::size_t(dim) + 1) {
    throw SpecError("state file: expected " + std::to_string(dim) + " rows");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto toks = tokenize(lines[r + 1]);
    if (toks.size() != std::size_t(dim)) {
      throw SpecError("state file: row " + std::to_string(r + 1) + " needs " +
                      std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = parse_complex(toks[c]);
  }
  return DensityMatrix(ComplexMatrix(std::move(m)));
}

std::string state_to_text(const DensityMatrix& rho) {
  std::ostringstream out;
  out << rho.dim() << "\n";
  for (int r = 0; r < rho.dim(); ++r) {
    for (int c = 0; c < rho.dim(); ++c) {
      if (c) out << ' ';
      out << format_complex(rho.raw()(r, c));
    }
    out << "\n";
  }
  return out.str();
}

DensityMatrix read_state_file(const std::string& path) {
  return parse_state_text(read_text_file(path));
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
  write_text_file(path, state_to_text(rho));
}

ConceptClass parse_concept_class_text(const std::string& text) {
  const auto lines = content_lines(text);
  std::size_t i = 0;
  auto expect = [&](const char* what) -> std::vector<std::string> {
    if (i >= lines.size()) throw SpecError(std::string("class file: missing ") + what);
    return tokenize(lines[i++]);
  };

  auto head = expect("points header");
  if (head.size() != 2 || head[0] != "points") {
    throw SpecError("class file: expected 'points <count>'");
  }
  const int npts = std::stoi(head[1]);
  std::vector<Instance> pts;
  for (int k = 0; k < npts; ++k) {
    auto toks = expect("point line");
    Instance inst;
    inst.id = toks[0];
    for (std::size_t j = 1; j < toks.size(); ++j) {
      inst.coords.push_back(std::stod(toks[j]));
    }
    pts.push_back(std::move(inst));
  }
  auto domain = std::make_shared<Domain>(std::move(pts));

  auto gen = expect("generator line");
  if (gen.empty() || gen[0] != "generator") {
    throw SpecError("class file: expected 'generator <tag>'");
  }
  const std::string tag = gen.size() > 1 ? gen[1] : "explicit";
  if (tag == "thresholds") return thresholds_class(domain);
  if (tag == "axis-rectangles") return axis_rectangles_class(domain);
  if (tag == "balls") return balls_class(domain);
  if (tag == "ground-state-noise") return ground_state_noise_class(domain);
  if (tag == "full-binary") return full_binary_class(domain);
  if (tag != "explicit") throw SpecError("class file: unknown generator " + tag);

  std::vector<std::vector<std::uint8_t>> rows;
  while (i < lines.size()) {
    auto toks = tokenize(lines[i++]);
    if (toks.empty()) continue;
    if (toks[0] != "concept") throw SpecError("class file: expected 'concept ...'");
    if (toks.size() != std::size_t(npts) + 1) {
      throw SpecError("class file: concept row needs one bit per point");
    }
    std::vector<std::uint8_t> row(npts);
    for (int k = 0; k < npts; ++k) {
      if (toks[k + 1] != "0" && toks[k + 1] != "1") {
        throw SpecError("class file: labels must be 0/1");
      }
      row[k] = toks[k + 1] == "1" ? 1 : 0;
    }
    rows.push_back(std::move(row));
  }
  return ConceptClass(std::move(domain), std::move(rows), "explicit");
}

ConceptClass read_concept_class_file(const std::string& path) {
  return parse_concept_class_text(read_text_file(path));
}

void write_concept_class_file(const std::string& path, const ConceptClass& cls) {
  std::ostringstream out;
  const Domain& dom = *cls.domain();
  out << "points " << dom.size() << "\n";
  for (std::size_t i = 0; i < dom.size(); ++i) {
    out << dom.point(i).id;
    for (double c : dom.point(i).coords) out << ' ' << c;
    out << "\n";
  }
  out << "generator explicit\n";
  for (std::size_t m = 0; m < cls.size(); ++m) {
    out << "concept";
    for (std::size_t p = 0; p < dom.size(); ++p) {
      out << ' ' << int(cls.label(m, p));
    }
    out << "\n";
  }
  write_text_file(path, out.str());
}

LabeledDistribution parse_distribution_text(const std::string& text,
                                            DomainPtr domain) {
  std::vector<LabeledDistribution::Atom> atoms;
  for (const auto& line : content_lines(text)) {
    std::string piece;
    std::vector<std::string> fields;
    std::istringstream in(line);
    while (std::getline(in, piece, ',')) {
      // trim
      const auto a = piece.find_first_not_of(" \t");
      const auto b = piece.find_last_not_of(" \t");
      fields.push_back(a == std::string::npos ? "" : piece.substr(a, b - a + 1));
    }
    if (fields.size() != 3) {
      throw SpecError("distribution file: expected 'instance-id, bit, probability'");
    }
    LabeledDistribution::Atom atom;
    atom.point = domain->index_of(fields[0]);
    if (fields[1] != "0" && fields[1] != "1") {
      throw SpecError("distribution file: bit must be 0/1");
    }
    atom.bit = fields[1] == "1" ? 1 : 0;
    atom.prob = std::stod(fields[2]);
    atoms.push_back(atom);
  }
  return LabeledDistribution(std::move(domain), std::move(atoms));
}

LabeledDistribution read_distribution_file(const std::string& path,
                                           DomainPtr domain) {
  return parse_distribution_text(read_text_file(path), std::move(domain));
}

void write_distribution_file(const std::string& path,
                             const LabeledDistribution& mu) {
  std::ostringstream out;
  char buf[64];
  for (const auto& atom : mu.support()) {
    std::snprintf(buf, sizeof(buf), "%.17g", atom.prob);
    out << mu.domain()->point(atom.point).id << ", " << int(atom.bit) << ", "
        << buf << "\n";
  }
  write_text_file(path, out.str());
}

void write_hypothesis_table(const std::string& path, const Hypothesis& h) {
  std::ostringstream out;
  out << "# " << h.provenance << "\n";
  for (std::size_t p = 0; p < h.labels.size(); ++p) {
    out << h.domain->point(p).id << " " << int(h.labels[p]) << "\n";
  }
  write_text_file(path, out.str());
}

}  // namespace cqlearn
