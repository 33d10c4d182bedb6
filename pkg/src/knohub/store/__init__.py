"""Knowledge bases: persistence, search, publish/evaluate, views, XML."""

from .base import (
    PERSONAL,
    SHARED,
    DimensionFilter,
    EvaluationRecord,
    KnowledgeBase,
    PublishResult,
    SearchHit,
    SearchQuery,
    id_sort_key,
    publish,
    score_element,
    term_hits,
)
from .log import AppendLog
from .serde import element_from_json, element_to_json
from .views import (
    KnowledgeNetworkView,
    KnowledgeTreeView,
    NetworkEdge,
    NetworkNode,
    TreeNode,
    build_network,
    build_tree,
)
from .xml_codec import export_xml, import_xml

__all__ = [
    "AppendLog",
    "DimensionFilter",
    "EvaluationRecord",
    "KnowledgeBase",
    "KnowledgeNetworkView",
    "KnowledgeTreeView",
    "NetworkEdge",
    "NetworkNode",
    "PERSONAL",
    "PublishResult",
    "SHARED",
    "SearchHit",
    "SearchQuery",
    "TreeNode",
    "build_network",
    "build_tree",
    "element_from_json",
    "element_to_json",
    "export_xml",
    "id_sort_key",
    "import_xml",
    "publish",
    "score_element",
    "term_hits",
]
