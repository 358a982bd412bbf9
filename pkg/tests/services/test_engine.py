import pytest

from ccnsim.exceptions import InvalidScenarioError
from ccnsim.models.metrics import MetricsReport, NodeCounters
from ccnsim.models.scenario import Scenario
from ccnsim.services.engine import Simulation, iter_sweep, run, sweep, sweep_grid
from ccnsim.tables.contentstore import ContentStore
from ccnsim.tables.pit import Pit

FRACTIONS = [0.4, 0.5, 0.6, 0.7]
POLICIES = ["lru", "lfu", "fifo"]


def traced(scenario: Scenario) -> tuple[Simulation, MetricsReport]:
    simulation = Simulation(scenario, trace=True)
    return simulation, simulation.run()


def counters_without_query(report: MetricsReport) -> list[dict]:
    ignored = {"query_attached", "query_answered", "query_routes_learned"}
    return [
        {key: value for key, value in node.asdict().items() if key not in ignored}
        for node in report.per_node
    ]


def test_default_capacity():
    simulation = Simulation(Scenario(duration=0, drain=0))

    assert simulation.cache_capacity == 480
    assert all(node.cs.capacity == 480 for node in simulation.nodes.values())
    assert len(simulation.nodes) == 12
    assert len(simulation.catalog) == 1200


def test_each_router_produces_its_own_slice(small_scenario):
    simulation = Simulation(small_scenario)

    seattle = simulation.nodes[0]
    assert len(seattle.owned_names) == 10
    assert all(str(name).startswith("/Sea/") for name in seattle.owned_names)
    assert seattle.fib.best_green(simulation.catalog[-1]) is not None


def test_empty_run_has_zero_counters():
    report = run(Scenario(names_per_producer=10, duration=0))

    for node in report.per_node:
        assert all(getattr(node, counter) == 0 for counter in NodeCounters.COUNTERS)
    assert report.avg_response_time == 0.0


def test_every_router_emits_at_the_interest_rate(small_scenario):
    report = run(small_scenario)

    # 20 interests/s for 2 s, phases inside the first interval
    assert all(node.emitted == 40 for node in report.per_node)
    assert report.satisfied > 0
    assert report.avg_response_time > 0


@pytest.mark.parametrize("strategy", ["smart-flooding", "best-route"])
@pytest.mark.parametrize("policy", POLICIES)
@pytest.mark.parametrize("query_enabled", [True, False])
def test_interests_are_conserved(small_scenario, strategy, policy, query_enabled):
    report = run(
        small_scenario.replace(
            strategy=strategy, cache_policy=policy, query_enabled=query_enabled
        )
    )

    assert report.satisfied + report.unsatisfied == report.emitted
    for node in report.per_node:
        assert node.satisfied + node.unsatisfied == node.emitted


def test_conserved_under_pressure(small_scenario):
    scenario = small_scenario.replace(
        interest_rate=200.0, cache_capacity=1, pit_init_timeout=20.0, drain=0.0
    )

    report = run(scenario)

    assert report.satisfied + report.unsatisfied == report.emitted


def test_same_seed_same_report(small_scenario):
    first, first_report = traced(small_scenario)
    second, second_report = traced(small_scenario)

    assert first.trace_lines == second.trace_lines
    assert first_report.trace_hash == second_report.trace_hash
    assert first_report == second_report


def test_seed_changes_the_trace(small_scenario):
    _, first = traced(small_scenario)
    _, second = traced(small_scenario.replace(seed=2))

    assert first.trace_hash != second.trace_hash


def test_trace_lines(small_scenario):
    simulation, _ = traced(small_scenario)

    first = simulation.trace_lines[0].split()
    assert first[2] == "emit"
    assert first[3] == "interest"
    assert first[-1] == "face=0"
    events = {line.split()[2] for line in simulation.trace_lines}
    assert {"emit", "send", "recv", "deliver"} <= events


def test_report_has_trace_hash_only_when_tracing(small_scenario):
    assert run(small_scenario).trace_hash is None
    assert len(run(small_scenario, trace=True).trace_hash) == 64


def test_unanswered_query_names_leave_forwarding_unchanged(small_scenario, mocker):
    _, baseline = traced(small_scenario.replace(query_enabled=False))

    mocker.patch.object(ContentStore, "is_long_lived", return_value=False)
    _, with_query = traced(small_scenario.replace(query_enabled=True))

    assert with_query.query_enabled
    assert with_query.trace_hash == baseline.trace_hash
    assert counters_without_query(with_query) == counters_without_query(baseline)


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_inert_query_mechanism_matches_baseline(small_scenario, mocker, seed):
    baseline = run(small_scenario.replace(query_enabled=False, seed=seed))

    mocker.patch.object(Pit, "most_popular", return_value=None)
    inert = run(small_scenario.replace(query_enabled=True, seed=seed))

    assert [node.asdict() for node in inert.per_node] == [
        node.asdict() for node in baseline.per_node
    ]


def test_invalid_scenario_is_rejected():
    with pytest.raises(InvalidScenarioError) as error:
        Simulation(Scenario(cache_fraction=1.5))

    assert error.value.field == "cache_fraction"


def test_sweep_grid_order(small_scenario):
    scenarios = sweep_grid(small_scenario, FRACTIONS, POLICIES, [True, False], [1])

    assert len(scenarios) == 24
    assert [
        (s.cache_fraction, s.cache_policy, s.query_enabled) for s in scenarios[:3]
    ] == [(0.4, "lru", True), (0.4, "lru", False), (0.4, "lfu", True)]
    assert {s.strategy for s in scenarios} == {small_scenario.strategy}


def test_sweep_grid_strategies(small_scenario):
    scenarios = sweep_grid(
        small_scenario, [0.4], ["lru"], [True], [1, 2], ["smart-flooding", "best-route"]
    )

    assert [(s.strategy, s.seed) for s in scenarios] == [
        ("smart-flooding", 1),
        ("smart-flooding", 2),
        ("best-route", 1),
        ("best-route", 2),
    ]


@pytest.mark.parametrize(
    "axis", ["cache_fractions", "policies", "query_modes", "seeds"]
)
def test_sweep_grid_rejects_empty_axis(small_scenario, axis):
    axes = {
        "cache_fractions": [0.4],
        "policies": ["lru"],
        "query_modes": [True],
        "seeds": [1],
    }
    axes[axis] = []

    with pytest.raises(InvalidScenarioError) as error:
        sweep_grid(small_scenario, **axes)

    assert error.value.field == axis


def test_sweep_rows(small_scenario):
    base = small_scenario.replace(duration=0.5, drain=1.0)

    reports = sweep(base, FRACTIONS, POLICIES, [True, False], [7])

    assert len(reports) == 24
    assert [report.cache_capacity for report in reports[::6]] == [48, 60, 72, 84]
    assert all(report.seed == 7 for report in reports)
    assert [r.policy for r in reports[:6]] == ["lru", "lru", "lfu", "lfu", "fifo", "fifo"]


def test_parallel_sweep_matches_sequential(small_scenario):
    base = small_scenario.replace(duration=0.5, drain=1.0)
    axes = ([0.4, 0.7], ["lru"], [True], [1])

    assert list(iter_sweep(base, *axes, jobs=2)) == sweep(base, *axes)


def test_sweep_grid_validates_every_cell(small_scenario):
    with pytest.raises(InvalidScenarioError) as error:
        sweep_grid(small_scenario, [0.4, 1.5], ["lru"], [True], [1])

    assert error.value.field == "cache_fraction"


def test_routers_rank_popularity_separately_by_default(small_scenario):
    per_node = Simulation(small_scenario)
    network = Simulation(small_scenario.replace(popularity_scope="network"))

    assert per_node.requests[0].ranked != per_node.requests[1].ranked
    assert network.requests[0].ranked == network.requests[2].ranked
    assert network.requests[1].ranked == network.requests[2].ranked


# A consumer next to a holder that got its copy straight from the far producer
HOLDER_TOPOLOGY = """\
node 0 Consumer /A
node 1 Holder /H
node 2 Producer /P
link 0 1 10
link 0 2 50
link 1 2 50
"""


def replay_holder_requests(tmp_path, query_enabled: bool, staleness: float):
    path = tmp_path / "holder.topo"
    path.write_text(HOLDER_TOPOLOGY)
    scenario = Scenario(
        topology=str(path),
        names_per_producer=1,
        cache_capacity=1,
        fib_staleness_T=staleness,
        query_enabled=query_enabled,
        duration=0,
        drain=1.0,
    )
    simulation = Simulation(scenario)
    _, near, far = simulation.catalog
    # the holder caches the far name; the consumer fetches it, asks the holder
    # for its own name (carrying the far name as query), then loses both from
    # its one-slot store before asking for the far name again
    for node, name, at in [
        (1, far, 0.0),
        (0, far, 150.0),
        (0, near, 160.0),
        (0, near, 300.0),
        (0, far, 400.0),
    ]:
        simulation.request(node, name, at)
    return simulation.run()


def test_query_route_shortens_the_next_fetch(tmp_path):
    baseline = replay_holder_requests(tmp_path, query_enabled=False, staleness=10_000.0)
    with_query = replay_holder_requests(tmp_path, query_enabled=True, staleness=10_000.0)

    assert with_query.per_node[0].query_attached == 1
    assert with_query.per_node[1].query_answered == 1
    assert with_query.per_node[0].query_routes_learned == 1
    assert with_query.satisfied == baseline.satisfied == 5
    assert baseline.avg_response_time == pytest.approx(68.0)
    assert with_query.avg_response_time == pytest.approx(52.0)
    assert with_query.interest_tx <= baseline.interest_tx
    assert with_query.retransmissions == baseline.retransmissions == 0
    assert with_query.flood_events == baseline.flood_events == 0


def test_query_route_expires_with_the_staleness_threshold(tmp_path):
    baseline = replay_holder_requests(tmp_path, query_enabled=False, staleness=200.0)
    with_query = replay_holder_requests(tmp_path, query_enabled=True, staleness=200.0)

    assert with_query.per_node[0].query_routes_learned == 1
    assert with_query.avg_response_time == pytest.approx(68.0)
    assert counters_without_query(with_query) == counters_without_query(baseline)
