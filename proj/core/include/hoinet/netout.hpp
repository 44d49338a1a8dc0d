#ifndef HOINET_NETOUT_HPP
#define HOINET_NETOUT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoinet/signif.hpp"

namespace hoinet {

/// Informational character of a measure value: negative and significant
/// means synergy, positive and significant means redundancy, anything
/// else is balanced. Without significance flags (analytic networks) the
/// call is made on the value alone with a 1e-9 balance band.
enum class HoiClass { synergy, balanced, redundancy };

const char* to_string(HoiClass cls);
HoiClass classify(double value, std::optional<bool> significant);

/// Condensed confidence summary attached to a network record.
struct SignifSummary {
  double lower = 0.0;
  double upper = 0.0;
  bool significant = false;
};

struct NodeRecord {
  std::string label;
  double entropy_rate = 0.0;
  double gradient = 0.0;
  std::optional<SignifSummary> gradient_sig;
  HoiClass cls = HoiClass::balanced;  ///< classification of the gradient
};

struct LinkRecord {
  int i = 0;
  int j = 0;
  double mir = 0.0;
  std::optional<SignifSummary> mir_sig;
  double local_oir = 0.0;
  std::optional<SignifSummary> local_sig;
  HoiClass cls = HoiClass::balanced;  ///< classification of the link balance
};

struct GlobalRecord {
  double oir = 0.0;
  std::optional<SignifSummary> sig;
  HoiClass cls = HoiClass::balanced;
};

enum class NetworkSource { model_analytic, series_estimated };

const char* to_string(NetworkSource source);
NetworkSource parse_network_source(const std::string& name);

struct NetworkMeta {
  NetworkSource source = NetworkSource::model_analytic;
  int n_nodes = 0;
  std::optional<int> n_samples;
  int order = 0;
  int q = 0;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::string timestamp;  ///< ISO-8601; may be empty
};

/// The toolkit's central artifact: one record per node, per unordered
/// link, and one global record, plus provenance metadata.
struct HoiNetwork {
  NetworkMeta meta;
  std::vector<NodeRecord> nodes;
  std::vector<LinkRecord> links;
  GlobalRecord global;
};

/// Builds the network from measure values, optional significance results
/// (estimated networks only; analytic networks must pass nullptr), and
/// node labels (empty list auto-generates X1..XN). Throws
/// DimensionMismatch on inconsistent sizes and InvalidArgument when an
/// analytic network carries significance.
HoiNetwork assemble(const HoiValues& values, const NetworkSignificance* signif,
                    const NetworkMeta& meta, const std::vector<std::string>& labels = {});

/// Lossless JSON document with stable key ordering.
std::string to_json(const HoiNetwork& net);
HoiNetwork network_from_json(const std::string& text);

/// GraphML 1.0 document: gradient/entropy-rate node attributes, link
/// measure edge attributes, global balance as a graph attribute.
std::string to_graphml(const HoiNetwork& net);

/// Plot-ready tables with fixed column order.
struct CsvTables {
  std::string nodes;
  std::string links;
  std::string global;
};

CsvTables to_csv_tables(const HoiNetwork& net);

}  // namespace hoinet

#endif
