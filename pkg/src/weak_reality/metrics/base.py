from abc import ABC, abstractmethod
from typing import Dict, Iterable, List, NamedTuple, Union


class MetricDefinition(NamedTuple):
    name: str
    documentation: str
    labelnames: Iterable[str] = ()


# Counters and gauges reported while running sweeps
SWEEP_COUNTERS = [
    MetricDefinition("points", "Grid points evaluated", ("command",)),
    MetricDefinition("tomography_runs", "Simulated tomography datasets reconstructed"),
]
SWEEP_GAUGES = [
    MetricDefinition("last_mle_iterations", "Iterations of the latest MLE fit"),
]


class BaseMetricsCollector(ABC):
    """
    Sink for run statistics.

    metrics_collector.init_metrics(metrics=SWEEP_COUNTERS, gauges=SWEEP_GAUGES)
    metrics_collector.metric_inc("points", labels={"command": "sweep-strength"})
    metrics_collector.gauge_set("last_mle_iterations", 42)
    """

    def __init__(self, namespace: str = "") -> None:
        self._namespace = namespace

    @abstractmethod
    def init_metrics(
        self,
        metrics: List[MetricDefinition],
        gauges: List[MetricDefinition],
    ) -> None: ...  # pragma: no cover

    @abstractmethod
    def metric_inc(
        self,
        key: str,
        value: Union[float, int] = 1,
        labels: Union[Dict[str, str], None] = None,
    ) -> None: ...  # pragma: no cover

    @abstractmethod
    def gauge_set(self, key: str, value: float) -> None: ...  # pragma: no cover

    @abstractmethod
    def get_counters(self) -> Dict[str, float]:
        """
        Current value of every counter and gauge, counters summed over
        their labels.
        """
        ...  # pragma: no cover
