"""Anatomy of an edge pipeline run.

An edge run processes items on the device (compute), sends small result
messages over the link (flight), and writes them to blob storage
through the hub (residence). Every message's end-to-end latency
decomposes exactly into those three parts.
"""

from edgebench import load_fixture, run_scenario

config = load_fixture("scenarios/greengrass-audio")
print(f"scenario: {config.label}")
print(f"  items: {config.workload.items}, "
      f"compute: {config.workload.compute_ms.to_spec()}, "
      f"payload: {config.workload.result_payload_bytes.to_spec()}")
print(f"  hub policy: {config.hub.mode}\n")

result = run_scenario(config)
report = result.report

print("first three messages (ms):")
print(f"  {'id':>3} {'c_edge':>7} {'flight':>7} {'residence':>9} {'e2e':>7}")
for row in result.rows[:3]:
    print(f"  {row.id:>3} {row.c_edge_ms:>7} {row.flight_ms:>7} "
          f"{row.residence_ms:>9} {row.e2e_ms:>7}")

print("\nthe decomposition is exact for every message:")
ok = all(r.e2e_ms == r.c_edge_ms + r.flight_ms + r.residence_ms for r in result.rows)
print(f"  e2e == c_edge + flight + residence for all {len(result.rows)} rows: {ok}")

agg = report.aggregates
print("\naggregates:")
for metric in ("c_edge_ms", "flight_ms", "residence_ms", "e2e_ms"):
    a = agg[metric]
    print(f"  {metric:>12}: mean {a['mean']:>8.1f}  median {a['median']:>8.0f}  "
          f"p95 {a['p95']:>8.0f}")

total = report.ledger["total"]
print(f"\nbyte ledger: {total['payload_bytes']} payload + "
      f"{total['overhead_bytes']} framing = {total['transmitted_bytes']} transmitted")
print(f"blobs written: {report.blob_count} (one per message under the immediate policy)")
