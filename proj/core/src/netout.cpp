#include "hoinet/netout.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace hoinet {

namespace {

constexpr double kBalanceBand = 1e-9;

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw IoError("failed to format numeric value");
  return std::string(buf, ptr);
}

SignifSummary summary_of(const SignificanceResult& r) {
  return SignifSummary{r.lower, r.upper, r.significant};
}

ordered_json signif_to_json(const std::optional<SignifSummary>& s) {
  if (!s) return nullptr;
  return ordered_json{{"lower", s->lower}, {"upper", s->upper}, {"significant", s->significant}};
}

std::optional<SignifSummary> signif_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return SignifSummary{j.at("lower").get<double>(), j.at("upper").get<double>(),
                       j.at("significant").get<bool>()};
}

HoiClass parse_class(const std::string& name) {
  if (name == "synergy") return HoiClass::synergy;
  if (name == "balanced") return HoiClass::balanced;
  if (name == "redundancy") return HoiClass::redundancy;
  throw IoError("network JSON: unknown class '" + name + "'");
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

const char* to_string(HoiClass cls) {
  switch (cls) {
    case HoiClass::synergy: return "synergy";
    case HoiClass::balanced: return "balanced";
    case HoiClass::redundancy: return "redundancy";
  }
  return "?";
}

HoiClass classify(double value, std::optional<bool> significant) {
  if (significant.has_value()) {
    if (*significant && value > 0.0) return HoiClass::redundancy;
    if (*significant && value < 0.0) return HoiClass::synergy;
    return HoiClass::balanced;
  }
  if (value > kBalanceBand) return HoiClass::redundancy;
  if (value < -kBalanceBand) return HoiClass::synergy;
  return HoiClass::balanced;
}

const char* to_string(NetworkSource source) {
  return source == NetworkSource::model_analytic ? "model-analytic" : "series-estimated";
}

NetworkSource parse_network_source(const std::string& name) {
  if (name == "model-analytic") return NetworkSource::model_analytic;
  if (name == "series-estimated") return NetworkSource::series_estimated;
  throw IoError("network JSON: unknown source '" + name + "'");
}

HoiNetwork assemble(const HoiValues& values, const NetworkSignificance* signif,
                    const NetworkMeta& meta, const std::vector<std::string>& labels) {
  const int n = values.n_nodes;
  const int pairs = n_pairs(n);
  if (static_cast<int>(values.entropy_rates.size()) != n ||
      static_cast<int>(values.gradient.size()) != n ||
      static_cast<int>(values.mir.size()) != pairs ||
      static_cast<int>(values.local_oir.size()) != pairs) {
    throw DimensionMismatch("assemble: HoiValues fields are inconsistent with n_nodes");
  }
  if (meta.n_nodes != n) throw DimensionMismatch("assemble: metadata n_nodes mismatch");
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw DimensionMismatch("assemble: label count mismatch");
  }
  if (signif != nullptr) {
    if (meta.source == NetworkSource::model_analytic) {
      throw InvalidArgument("assemble: analytic networks carry no significance results");
    }
    if (static_cast<int>(signif->hoi.gradient.size()) != n ||
        static_cast<int>(signif->hoi.local_oir.size()) != pairs ||
        static_cast<int>(signif->mir.size()) != pairs) {
      throw DimensionMismatch("assemble: significance collection sizes mismatch");
    }
  }

  HoiNetwork net;
  net.meta = meta;
  net.nodes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    NodeRecord rec;
    rec.label = labels.empty() ? "X" + std::to_string(i + 1) : labels[ii];
    rec.entropy_rate = values.entropy_rates[ii];
    rec.gradient = values.gradient[ii];
    if (signif) rec.gradient_sig = summary_of(signif->hoi.gradient[ii]);
    rec.cls = classify(rec.gradient, signif ? std::optional<bool>(rec.gradient_sig->significant)
                                            : std::nullopt);
    net.nodes.push_back(std::move(rec));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto k = static_cast<std::size_t>(pair_index(i, j, n));
      LinkRecord rec;
      rec.i = i;
      rec.j = j;
      rec.mir = values.mir[k];
      rec.local_oir = values.local_oir[k];
      if (signif) {
        rec.mir_sig = summary_of(signif->mir[k]);
        rec.local_sig = summary_of(signif->hoi.local_oir[k]);
      }
      rec.cls = classify(rec.local_oir, signif ? std::optional<bool>(rec.local_sig->significant)
                                               : std::nullopt);
      net.links.push_back(std::move(rec));
    }
  }
  net.global.oir = values.oir;
  if (signif) net.global.sig = summary_of(signif->hoi.oir);
  net.global.cls = classify(net.global.oir,
                            signif ? std::optional<bool>(net.global.sig->significant) : std::nullopt);
  return net;
}

std::string to_json(const HoiNetwork& net) {
  ordered_json j;
  j["schema"] = "hoinet/network/v1";
  ordered_json meta;
  meta["source"] = to_string(net.meta.source);
  meta["n_nodes"] = net.meta.n_nodes;
  meta["n_samples"] = net.meta.n_samples ? ordered_json(*net.meta.n_samples) : ordered_json(nullptr);
  meta["order"] = net.meta.order;
  meta["q"] = net.meta.q;
  meta["alpha"] = net.meta.alpha ? ordered_json(*net.meta.alpha) : ordered_json(nullptr);
  meta["seed"] = net.meta.seed ? ordered_json(*net.meta.seed) : ordered_json(nullptr);
  meta["timestamp"] = net.meta.timestamp;
  j["metadata"] = std::move(meta);

  ordered_json nodes = ordered_json::array();
  for (const NodeRecord& rec : net.nodes) {
    ordered_json nj;
    nj["label"] = rec.label;
    nj["entropy_rate"] = rec.entropy_rate;
    nj["gradient"] = rec.gradient;
    nj["gradient_significance"] = signif_to_json(rec.gradient_sig);
    nj["class"] = to_string(rec.cls);
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = std::move(nodes);

  ordered_json links = ordered_json::array();
  for (const LinkRecord& rec : net.links) {
    ordered_json lj;
    lj["i"] = rec.i;
    lj["j"] = rec.j;
    lj["mir"] = rec.mir;
    lj["mir_significance"] = signif_to_json(rec.mir_sig);
    lj["local_oir"] = rec.local_oir;
    lj["local_oir_significance"] = signif_to_json(rec.local_sig);
    lj["class"] = to_string(rec.cls);
    links.push_back(std::move(lj));
  }
  j["links"] = std::move(links);

  ordered_json global;
  global["oir"] = net.global.oir;
  global["oir_significance"] = signif_to_json(net.global.sig);
  global["class"] = to_string(net.global.cls);
  j["global"] = std::move(global);

  return j.dump(2) + "\n";
}

HoiNetwork network_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  }
  try {
    HoiNetwork net;
    const auto& meta = j.at("metadata");
    net.meta.source = parse_network_source(meta.at("source").get<std::string>());
    net.meta.n_nodes = meta.at("n_nodes").get<int>();
    if (!meta.at("n_samples").is_null()) net.meta.n_samples = meta.at("n_samples").get<int>();
    net.meta.order = meta.at("order").get<int>();
    net.meta.q = meta.at("q").get<int>();
    if (!meta.at("alpha").is_null()) net.meta.alpha = meta.at("alpha").get<double>();
    if (!meta.at("seed").is_null()) net.meta.seed = meta.at("seed").get<std::uint64_t>();
    net.meta.timestamp = meta.at("timestamp").get<std::string>();

    for (const auto& nj : j.at("nodes")) {
      NodeRecord rec;
      rec.label = nj.at("label").get<std::string>();
      rec.entropy_rate = nj.at("entropy_rate").get<double>();
      rec.gradient = nj.at("gradient").get<double>();
      rec.gradient_sig = signif_from_json(nj.at("gradient_significance"));
      rec.cls = parse_class(nj.at("class").get<std::string>());
      net.nodes.push_back(std::move(rec));
    }
    for (const auto& lj : j.at("links")) {
      LinkRecord rec;
      rec.i = lj.at("i").get<int>();
      rec.j = lj.at("j").get<int>();
      rec.mir = lj.at("mir").get<double>();
      rec.mir_sig = signif_from_json(lj.at("mir_significance"));
      rec.local_oir = lj.at("local_oir").get<double>();
      rec.local_sig = signif_from_json(lj.at("local_oir_significance"));
      rec.cls = parse_class(lj.at("class").get<std::string>());
      net.links.push_back(std::move(rec));
    }
    const auto& global = j.at("global");
    net.global.oir = global.at("oir").get<double>();
    net.global.sig = signif_from_json(global.at("oir_significance"));
    net.global.cls = parse_class(global.at("class").get<std::string>());
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("network JSON: ") + e.what());
  }
}

std::string to_graphml(const HoiNetwork& net) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      << "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  out << "  <key id=\"g_oir\" for=\"graph\" attr.name=\"oir\" attr.type=\"double\"/>\n"
      << "  <key id=\"g_class\" for=\"graph\" attr.name=\"class\" attr.type=\"string\"/>\n"
      << "  <key id=\"n_label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"n_er\" for=\"node\" attr.name=\"entropy_rate\" attr.type=\"double\"/>\n"
      << "  <key id=\"n_grad\" for=\"node\" attr.name=\"gradient\" attr.type=\"double\"/>\n"
      << "  <key id=\"n_sig\" for=\"node\" attr.name=\"gradient_significant\" attr.type=\"boolean\"/>\n"
      << "  <key id=\"n_class\" for=\"node\" attr.name=\"class\" attr.type=\"string\"/>\n"
      << "  <key id=\"e_mir\" for=\"edge\" attr.name=\"mir\" attr.type=\"double\"/>\n"
      << "  <key id=\"e_mir_sig\" for=\"edge\" attr.name=\"mir_significant\" attr.type=\"boolean\"/>\n"
      << "  <key id=\"e_local\" for=\"edge\" attr.name=\"local_oir\" attr.type=\"double\"/>\n"
      << "  <key id=\"e_local_sig\" for=\"edge\" attr.name=\"local_oir_significant\" "
         "attr.type=\"boolean\"/>\n"
      << "  <key id=\"e_class\" for=\"edge\" attr.name=\"class\" attr.type=\"string\"/>\n";
  out << "  <graph id=\"hoi\" edgedefault=\"undirected\">\n";
  out << "    <data key=\"g_oir\">" << fmt(net.global.oir) << "</data>\n";
  out << "    <data key=\"g_class\">" << to_string(net.global.cls) << "</data>\n";
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const NodeRecord& rec = net.nodes[i];
    out << "    <node id=\"n" << i << "\">\n"
        << "      <data key=\"n_label\">" << xml_escape(rec.label) << "</data>\n"
        << "      <data key=\"n_er\">" << fmt(rec.entropy_rate) << "</data>\n"
        << "      <data key=\"n_grad\">" << fmt(rec.gradient) << "</data>\n";
    if (rec.gradient_sig) {
      out << "      <data key=\"n_sig\">" << (rec.gradient_sig->significant ? "true" : "false")
          << "</data>\n";
    }
    out << "      <data key=\"n_class\">" << to_string(rec.cls) << "</data>\n"
        << "    </node>\n";
  }
  for (std::size_t k = 0; k < net.links.size(); ++k) {
    const LinkRecord& rec = net.links[k];
    out << "    <edge id=\"e" << k << "\" source=\"n" << rec.i << "\" target=\"n" << rec.j
        << "\">\n"
        << "      <data key=\"e_mir\">" << fmt(rec.mir) << "</data>\n";
    if (rec.mir_sig) {
      out << "      <data key=\"e_mir_sig\">" << (rec.mir_sig->significant ? "true" : "false")
          << "</data>\n";
    }
    out << "      <data key=\"e_local\">" << fmt(rec.local_oir) << "</data>\n";
    if (rec.local_sig) {
      out << "      <data key=\"e_local_sig\">" << (rec.local_sig->significant ? "true" : "false")
          << "</data>\n";
    }
    out << "      <data key=\"e_class\">" << to_string(rec.cls) << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

CsvTables to_csv_tables(const HoiNetwork& net) {
  CsvTables tables;

  std::string& nodes = tables.nodes;
  nodes = "label,er,gradient,gradient_lo,gradient_hi,gradient_sig,class\n";
  for (const NodeRecord& rec : net.nodes) {
    nodes += rec.label;
    nodes += ',' + fmt(rec.entropy_rate) + ',' + fmt(rec.gradient);
    if (rec.gradient_sig) {
      nodes += ',' + fmt(rec.gradient_sig->lower) + ',' + fmt(rec.gradient_sig->upper) + ',' +
               (rec.gradient_sig->significant ? "1" : "0");
    } else {
      nodes += ",,,";
    }
    nodes += ',';
    nodes += to_string(rec.cls);
    nodes += '\n';
  }

  std::string& links = tables.links;
  links = "i,j,mir,mir_sig,local_oir,lo,hi,sig,class\n";
  for (const LinkRecord& rec : net.links) {
    links += std::to_string(rec.i) + ',' + std::to_string(rec.j) + ',' + fmt(rec.mir);
    links += rec.mir_sig ? (rec.mir_sig->significant ? ",1" : ",0") : ",";
    links += ',' + fmt(rec.local_oir);
    if (rec.local_sig) {
      links += ',' + fmt(rec.local_sig->lower) + ',' + fmt(rec.local_sig->upper) + ',' +
               (rec.local_sig->significant ? "1" : "0");
    } else {
      links += ",,,";
    }
    links += ',';
    links += to_string(rec.cls);
    links += '\n';
  }

  std::string& global = tables.global;
  global = "oir,lo,hi,sig,class\n";
  global += fmt(net.global.oir);
  if (net.global.sig) {
    global += ',' + fmt(net.global.sig->lower) + ',' + fmt(net.global.sig->upper) + ',' +
              (net.global.sig->significant ? "1" : "0");
  } else {
    global += ",,,";
  }
  global += ',';
  global += to_string(net.global.cls);
  global += '\n';

  return tables;
}

}  // namespace hoinet
