#include "fixtures.hpp"

#include "procscope/scope_engine.hpp"
#include "procscope/scope_lang.hpp"

namespace procscope::testing {

Timestamp sample_time(int k) {
  return Timestamp(parse_iso8601("2024-01-15T08:00:00Z").millis() + k * 3'600'000LL);
}

Log sample_a() {
  LogBuilder b;
  b.add_object_type("order");
  b.add_object_type("item", {{"weight", ValueKind::Number}});
  b.add_event_type("place");
  b.add_event_type("pick");
  b.add_event_type("ship");
  b.add_object({"o1", "order", {}});
  b.add_object({"i1", "item", {{"weight", {{sample_time(0), 5.0}}}}});
  b.add_object({"i2", "item", {{"weight", {{sample_time(0), 12.0}}}}});
  b.add_event({"e1", "place", sample_time(1), {}});
  b.add_event({"e2", "pick", sample_time(2), {}});
  b.add_event({"e3", "pick", sample_time(3), {}});
  b.add_event({"e4", "ship", sample_time(4), {}});
  b.add_event({"e5", "pick", sample_time(5), {}});
  b.add_e2o("e1", "rel", "o1");
  b.add_e2o("e2", "rel", "o1");
  b.add_e2o("e2", "rel", "i1");
  b.add_e2o("e3", "rel", "o1");
  b.add_e2o("e3", "rel", "i2");
  b.add_e2o("e4", "rel", "i1");
  b.add_e2o("e4", "rel", "i2");
  b.add_e2o("e5", "rel", "i1");
  return std::move(b).build();
}

Log sample_a_enriched() { return apply_scopes(sample_a(), parse_scope_file(kSampleScopes)); }

}  // namespace procscope::testing
