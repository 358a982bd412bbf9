import json

from ccnsim.models.metrics import CSV_HEADER, MetricsReport, NodeCounters


def make_report(per_node: list[NodeCounters]) -> MetricsReport:
    return MetricsReport(
        scenario_id="abc123",
        seed=7,
        strategy="smart-flooding",
        policy="lru",
        query_enabled=True,
        cache_fraction=0.4,
        cache_capacity=480,
        per_node=per_node,
    )


def test_csv_header():
    assert ",".join(CSV_HEADER) == (
        "scenario_id,seed,strategy,policy,query_enabled,cache_fraction,"
        "flood_events,flood_packets,interest_tx,retransmissions,unsatisfied,"
        "avg_response_time_ms"
    )


def test_record_satisfied():
    counters = NodeCounters(0)

    counters.record_satisfied([10.0, 30.0])

    assert counters.satisfied == 2
    assert counters.response_time_total == 40.0


def test_report_totals_and_average():
    first, second = NodeCounters(0), NodeCounters(1)
    first.record_satisfied([10.0, 30.0])
    second.record_satisfied([20.0])
    first.flood_events, first.flood_packets = 1, 3
    second.interest_tx = 5
    second.unsatisfied = 2

    report = make_report([first, second])

    assert report.satisfied == 3
    assert report.avg_response_time == 20.0
    assert report.flood_events == 1
    assert report.flood_packets == 3
    assert report.interest_tx == 5
    assert report.unsatisfied == 2


def test_average_without_satisfied_interests():
    assert make_report([NodeCounters(0)]).avg_response_time == 0.0


def test_csv_row():
    counters = NodeCounters(0)
    counters.record_satisfied([12.5])

    row = make_report([counters]).csv_row()

    assert row == [
        "abc123", "7", "smart-flooding", "lru", "on", "0.4",
        "0", "0", "0", "0", "0", "12.500000",
    ]  # fmt: skip


def test_report_asdict_and_equality():
    report = make_report([NodeCounters(0)])

    content = json.loads(repr(report))

    assert content["cache_capacity"] == 480
    assert content["per_node"][0]["node"] == 0
    assert report == make_report([NodeCounters(0)])
