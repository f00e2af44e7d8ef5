from typing import Dict, List, Optional, Union

from prometheus_client import REGISTRY, Counter, Gauge
from prometheus_client.registry import CollectorRegistry

from weak_reality.metrics.base import BaseMetricsCollector, MetricDefinition


class PrometheusMetricsCollector(BaseMetricsCollector):
    def __init__(
        self,
        namespace: str = "weak_reality",
        registry: Optional[CollectorRegistry] = None,
    ) -> None:
        super().__init__(namespace=namespace)
        self._registry: CollectorRegistry = registry or REGISTRY
        self._counters: Dict[str, Counter] = {}
        self._gauges: Dict[str, Gauge] = {}

    def init_metrics(
        self,
        metrics: List[MetricDefinition],
        gauges: List[MetricDefinition],
    ) -> None:
        for metric in (x for x in metrics if x.name not in self._counters):
            self._counters[metric.name] = Counter(
                name=metric.name,
                documentation=metric.documentation,
                labelnames=metric.labelnames,
                registry=self._registry,
                namespace=self._namespace,
            )
        for gauge in (x for x in gauges if x.name not in self._gauges):
            self._gauges[gauge.name] = Gauge(
                name=gauge.name,
                documentation=gauge.documentation,
                registry=self._registry,
                namespace=self._namespace,
            )

    def metric_inc(
        self,
        key: str,
        value: Union[float, int] = 1,
        labels: Optional[Dict[str, str]] = None,
    ) -> None:
        counter = self._counters[key]
        (counter.labels(**labels) if labels else counter).inc(value)

    def gauge_set(self, key: str, value: float) -> None:
        self._gauges[key].set(value)

    def get_counters(self) -> Dict[str, float]:
        values: Dict[str, float] = {}
        for name, counter in self._counters.items():
            metric = list(counter.collect())[0]
            values[name] = sum(
                s.value for s in metric.samples if s.name.endswith("_total")
            )
        for name, gauge in self._gauges.items():
            metric = list(gauge.collect())[0]
            values[name] = metric.samples[0].value if metric.samples else 0.0
        return values
