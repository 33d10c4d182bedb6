"""The shared hub: accounts, the shared base, per-user agents, tasks.

The hub hosts one personal agent per signed-up user plus the shared
knowledge base every agent publishes into. Element ids come from a
single allocator, so an id names the same element no matter whose base
it sits in. All personal logs are replayed at startup to keep that
allocator ahead of every id ever issued, even for users who have not
logged in since the restart.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import secrets
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timedelta
from pathlib import Path
from typing import Any, Callable

from ..agent import AgentDirectory, PeerAnswer, PersonalAgent
from ..core import IdAllocator, utc_now
from ..errors import (
    AccessError,
    AuthError,
    ConflictError,
    NotFoundError,
    ValidationError,
)
from ..lifecycle import (
    DesignTask,
    HistoryEntry,
    Project,
    SituationRegistry,
    Solution,
    TaskState,
    export_tasks_xml,
    import_tasks_xml,
    offered_events,
    record_solution,
    task_step,
)
from ..core import label_table
from ..core.ops import derive_version
from ..store import (
    KnowledgeBase,
    PublishResult,
    build_network,
    build_tree,
    export_xml,
    import_xml,
)
from ..store.base import SearchQuery
from ..store.serde import element_to_json, parse_instant
from .config import ServerConfig

_PBKDF2_ROUNDS = 60_000
_NAME_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_.-]{0,63}")


def _hash_password(password: str, salt: str) -> str:
    return hashlib.pbkdf2_hmac(
        "sha256", password.encode("utf-8"), bytes.fromhex(salt), _PBKDF2_ROUNDS
    ).hex()


def _write_json_atomic(path: Path, payload: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


@dataclass(frozen=True)
class UserAccount:
    name: str
    team: str
    salt: str
    password_hash: str
    is_admin: bool = False

    def check(self, password: str) -> bool:
        return secrets.compare_digest(self.password_hash, _hash_password(password, self.salt))


@dataclass(frozen=True)
class Session:
    token: str
    user: str
    expires: datetime


def _task_to_json(task: DesignTask) -> dict[str, Any]:
    return {
        "id": task.id,
        "project": task.project,
        "title": task.title,
        "inputs": list(task.inputs),
        "innovative": task.innovative,
        "assignee": task.assignee,
        "state": task.state.value,
        "partial_solutions": [
            {"element_id": s.element_id, "note": s.note} for s in task.partial_solutions
        ],
        "history": [
            {
                "state": h.state.value,
                "event": h.event.value,
                "timestamp": h.timestamp.isoformat(),
            }
            for h in task.history
        ],
    }


def _task_from_json(data: dict[str, Any]) -> DesignTask:
    from ..lifecycle import TaskEvent

    return DesignTask(
        id=data["id"],
        project=data.get("project", ""),
        title=data.get("title", ""),
        inputs=tuple(data.get("inputs", ())),
        innovative=data.get("innovative", True),
        assignee=data.get("assignee", ""),
        state=TaskState(data.get("state", TaskState.RECEIVED.value)),
        partial_solutions=tuple(
            Solution(s["element_id"], s.get("note", ""))
            for s in data.get("partial_solutions", ())
        ),
        history=tuple(
            HistoryEntry(
                state=TaskState(h["state"]),
                event=TaskEvent(h["event"]),
                timestamp=parse_instant(h["timestamp"]),
            )
            for h in data.get("history", ())
        ),
    )


class HubLink:
    """In-process server link handed to each hosted agent."""

    def __init__(self, hub: "Hub", owner: str) -> None:
        self.hub = hub
        self.owner = owner

    @property
    def live(self) -> bool:
        return self.hub.accepting and not self.hub.closed

    def heartbeat(self, agent_id: str, owner: str, status: str) -> None:
        self.hub.directory.heartbeat(agent_id, owner, status)

    def shared_search(self, query: SearchQuery):
        return self.hub.shared.search(query)

    def publish_snapshot(self, element):
        return self.hub.accept_publish(element)

    def evaluate(self, element_id: str, score: int) -> int:
        return self.hub.shared.evaluate(element_id, self.owner, score)

    def record_shared_usage(self, element_id: str, context):
        return self.hub.shared.record_usage(element_id, context)

    def peer_query(self, terms: tuple[str, ...]):
        return self.hub.answer_peer_query(self.owner, terms)


class Hub:
    def __init__(self, config: ServerConfig | None = None, *, clock: Callable[[], datetime] = utc_now) -> None:
        self.config = config or ServerConfig()
        self.clock = clock
        self.data = self.config.data_path
        self.data.mkdir(parents=True, exist_ok=True)
        self.accepting = True
        self.closed = False
        self._lock = threading.RLock()

        self.ids = IdAllocator()
        self.shared = KnowledgeBase("shared", path=self.data / "shared.log", ids=self.ids)
        self.directory = AgentDirectory(
            staleness_timeout=self.config.staleness_timeout, clock=clock
        )
        self.situations = SituationRegistry()
        self._personal: dict[str, KnowledgeBase] = {}
        self._agents: dict[str, PersonalAgent] = {}
        self._sessions: dict[str, Session] = {}
        self._users: dict[str, UserAccount] = {}
        self._tasks: dict[str, DesignTask] = {}
        self._projects: dict[str, Project] = {}

        self._load_users()
        self._load_tasks()
        self._load_projects()
        # Replaying every personal log keeps the shared allocator ahead of
        # ids handed out before a restart, including unpublished drafts.
        for log_path in sorted(self.data.glob("personal_*.log")):
            owner = log_path.stem.removeprefix("personal_")
            self._personal_kb(owner)

    # -- accounts -------------------------------------------------------------

    def _users_file(self) -> Path:
        return self.data / "users.json"

    def _load_users(self) -> None:
        path = self._users_file()
        if not path.exists():
            self._users = {}
            self._create_user(
                self.config.admin_user, self.config.admin_password, team="", is_admin=True
            )
            return
        raw = json.loads(path.read_text(encoding="utf-8"))
        self._users = {
            u["name"]: UserAccount(
                name=u["name"],
                team=u.get("team", ""),
                salt=u["salt"],
                password_hash=u["hash"],
                is_admin=u.get("is_admin", False),
            )
            for u in raw.get("users", ())
        }

    def _save_users(self) -> None:
        _write_json_atomic(
            self._users_file(),
            {
                "users": [
                    {
                        "name": u.name,
                        "team": u.team,
                        "salt": u.salt,
                        "hash": u.password_hash,
                        "is_admin": u.is_admin,
                    }
                    for u in self._users.values()
                ]
            },
        )

    def _create_user(self, name: str, password: str, *, team: str, is_admin: bool) -> UserAccount:
        if not _NAME_RE.fullmatch(name):
            raise ValidationError(f"bad user name {name!r}")
        if not password:
            raise ValidationError("password must be non-empty")
        if name in self._users:
            raise ConflictError(f"user {name} already exists")
        salt = secrets.token_hex(16)
        account = UserAccount(
            name=name,
            team=team,
            salt=salt,
            password_hash=_hash_password(password, salt),
            is_admin=is_admin,
        )
        self._users[name] = account
        self._save_users()
        return account

    def login(self, name: str, password: str) -> dict[str, Any]:
        with self._lock:
            account = self._users.get(name)
            if account is None or not account.check(password):
                raise AuthError("unknown user or wrong password")
            token = secrets.token_urlsafe(32)
            expires = self.clock() + timedelta(hours=self.config.token_ttl_hours)
            self._sessions[token] = Session(token=token, user=name, expires=expires)
            self.agent_for(name)  # the user's agent comes online with them
            return {
                "token": token,
                "user": name,
                "team": account.team,
                "is_admin": account.is_admin,
                "expires": expires.isoformat(),
            }

    def logout(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)

    def resolve(self, token: str | None) -> UserAccount:
        with self._lock:
            session = self._sessions.get(token or "")
            if session is None:
                raise AuthError("missing or unknown token")
            if session.expires <= self.clock():
                del self._sessions[token]
                raise AuthError("token expired")
            return self._users[session.user]

    def add_user(
        self, token: str, name: str, password: str, *, team: str = "", is_admin: bool = False
    ) -> dict[str, Any]:
        actor = self.resolve(token)
        if not actor.is_admin:
            raise AccessError("only an admin can add users")
        with self._lock:
            account = self._create_user(name, password, team=team, is_admin=is_admin)
        return {"name": account.name, "team": account.team, "is_admin": account.is_admin}

    def list_users(self, token: str) -> list[dict[str, Any]]:
        self.resolve(token)
        with self._lock:
            return [
                {"name": u.name, "team": u.team, "is_admin": u.is_admin}
                for u in sorted(self._users.values(), key=lambda u: u.name)
            ]

    def whoami(self, token: str) -> dict[str, Any]:
        account = self.resolve(token)
        return {"user": account.name, "team": account.team, "is_admin": account.is_admin}

    # -- agents and bases -------------------------------------------------------

    def _personal_kb(self, owner: str) -> KnowledgeBase:
        with self._lock:
            kb = self._personal.get(owner)
            if kb is None:
                kb = KnowledgeBase(
                    "personal",
                    owner=owner,
                    path=self.data / f"personal_{owner}.log",
                    ids=self.ids,
                )
                self._personal[owner] = kb
            return kb

    def agent_for(self, owner: str) -> PersonalAgent:
        with self._lock:
            agent = self._agents.get(owner)
            if agent is None:
                team = self._users[owner].team if owner in self._users else ""
                agent = PersonalAgent(
                    owner,
                    self._personal_kb(owner),
                    team=team,
                    link=HubLink(self, owner),
                    situations=self.situations,
                    queue_bound=self.config.queue_bound,
                )
                self._agents[owner] = agent
                self.directory.heartbeat(agent.agent_id, owner, agent.status)
            return agent

    def tick_all(self) -> dict[str, list[str]]:
        """Run one background tick on every hosted agent."""
        with self._lock:
            agents = list(self._agents.values())
        return {a.owner: list(a.background_tick().actions) for a in agents}

    def accept_publish(self, element):
        if not element.logical:
            raise ValidationError(f"element {element.id} is logically deleted")
        if element.id in self.shared:
            existing = self.shared.get(element.id)
            if existing.version != element.version:
                raise ConflictError(
                    f"shared base already holds element {element.id} "
                    f"at version {existing.version}, got {element.version}"
                )
            return PublishResult(element.id, str(element.version), True)
        try:
            self.shared.store(replace(element, published=True))
        except ConflictError:
            if self.shared.get(element.id).version != element.version:
                raise
            return PublishResult(element.id, str(element.version), True)
        return PublishResult(element.id, str(element.version), False)

    def answer_peer_query(self, requester: str, terms: tuple[str, ...]) -> list[PeerAnswer]:
        """Answer for every online peer from their published contributions."""
        online = self.directory.online_owners()
        online.pop(requester, None)
        if not online:
            return []
        hits = self.shared.search(SearchQuery(terms=tuple(terms)))
        by_creator: dict[str, list[str]] = {}
        for hit in hits:
            by_creator.setdefault(hit.element.creator, []).append(hit.id)
        return [
            PeerAnswer(agent_id=agent_id, owner=owner, element_ids=tuple(by_creator[owner]))
            for owner, agent_id in sorted(online.items())
            if owner in by_creator
        ]

    # -- element operations (token-facing) --------------------------------------

    def create_element(self, token: str, payload: dict[str, Any]) -> dict[str, Any]:
        account = self.resolve(token)
        return self.agent_for(account.name).submit("create", payload).payload

    def search(self, token: str, payload: dict[str, Any]) -> dict[str, Any]:
        account = self.resolve(token)
        return self.agent_for(account.name).submit("search", payload).payload

    def use_element(self, token: str, element_id: str) -> dict[str, Any]:
        account = self.resolve(token)
        return self.agent_for(account.name).submit("use", {"element_id": element_id}).payload

    def publish_element(self, token: str, element_id: str) -> dict[str, Any]:
        account = self.resolve(token)
        return self.agent_for(account.name).submit("publish", {"element_id": element_id}).payload

    def evaluate_element(self, token: str, element_id: str, score: Any) -> dict[str, Any]:
        account = self.resolve(token)
        return (
            self.agent_for(account.name)
            .submit("evaluate", {"element_id": element_id, "score": score})
            .payload
        )

    def peer_query(self, token: str, terms: list[str]) -> dict[str, Any]:
        account = self.resolve(token)
        return self.agent_for(account.name).submit("peer_query", {"terms": terms}).payload

    def _visible_element(self, account: UserAccount, element_id: str):
        """Resolve an id the caller may see: own drafts first, then shared."""
        personal = self._personal_kb(account.name)
        if element_id in personal:
            return personal.get(element_id, as_user=account.name), "personal"
        if element_id in self.shared:
            return self.shared.get(element_id), "shared"
        raise NotFoundError(f"no element {element_id}")

    def get_element(self, token: str, element_id: str) -> dict[str, Any]:
        element, scope = self._visible_element(self.resolve(token), element_id)
        return {"scope": scope, "element": element_to_json(element)}

    def export_element(self, token: str, element_id: str) -> str:
        element, _ = self._visible_element(self.resolve(token), element_id)
        return export_xml([element])

    def derive_element(self, token: str, payload: dict[str, Any]) -> dict[str, Any]:
        account = self.resolve(token)
        parent, _ = self._visible_element(account, payload.get("parent_id", ""))
        personal = self._personal_kb(account.name)
        context, captured = self.situations.capture(
            account.name, team=account.team, now=self.clock()
        )
        child = derive_version(
            parent,
            dict(payload.get("changes", {})),
            context,
            ids=self.ids,
            creator=account.name,
            new_generation=bool(payload.get("new_generation", False)),
        )
        personal.store(child, as_user=account.name)
        return {"element": element_to_json(child), "context_captured": captured}

    def delete_element(self, token: str, element_id: str, scope: str = "personal") -> dict[str, Any]:
        account = self.resolve(token)
        if scope == "personal":
            kb = self._personal_kb(account.name)
            removed = kb.delete(element_id, as_user=account.name)
        elif scope == "shared":
            current = self.shared.get(element_id)
            if current.creator != account.name and not account.is_admin:
                raise AccessError(
                    f"only {current.creator} or an admin may retire element {element_id}"
                )
            removed = self.shared.delete(element_id)
        else:
            raise ValidationError(f"unknown scope {scope!r}")
        return {"element": element_to_json(removed), "scope": scope}

    def element_evaluations(self, token: str, element_id: str) -> list[dict[str, Any]]:
        self.resolve(token)
        self.shared.get(element_id)
        return [
            {
                "element_id": rec.element_id,
                "evaluator": rec.evaluator,
                "score": rec.score,
                "timestamp": rec.timestamp.isoformat(),
            }
            for rec in self.shared.evaluations(element_id)
        ]

    # -- views and interchange ---------------------------------------------------

    def _scope_elements(self, account: UserAccount, scope: str):
        if scope == "shared":
            return self.shared.elements()
        if scope == "personal":
            return self._personal_kb(account.name).elements(as_user=account.name)
        raise ValidationError(f"unknown scope {scope!r}")

    def tree_view(self, token: str, scope: str = "shared", roots: list[str] | None = None) -> dict:
        account = self.resolve(token)
        view = build_tree(self._scope_elements(account, scope), roots=roots)

        def node_json(node) -> dict[str, Any]:
            return {
                "id": node.id,
                "title": node.title,
                "version": str(node.version),
                "children": [node_json(c) for c in node.children],
            }

        return {
            "scope": scope,
            "roots": [node_json(r) for r in view.roots],
            "node_count": view.node_count(),
            "depth": view.depth(),
        }

    def network_view(self, token: str, scope: str = "shared", selector: list[str] | None = None) -> dict:
        account = self.resolve(token)
        wanted = set(selector) if selector else None
        view = build_network(
            self._scope_elements(account, scope),
            selector=None if wanted is None else (lambda e: e.id in wanted),
        )
        return {
            "scope": scope,
            "nodes": [
                {
                    "id": n.id,
                    "title": n.title,
                    "ranking": n.ranking,
                    "degrees": dict(n.degrees),
                }
                for n in view.nodes
            ],
            "edges": [
                {"source": e.source, "target": e.target, "kind": e.kind} for e in view.edges
            ],
        }

    def export_elements(self, token: str, scope: str = "shared") -> str:
        account = self.resolve(token)
        return export_xml(self._scope_elements(account, scope))

    def import_elements(self, token: str, document: str, scope: str = "personal") -> dict[str, Any]:
        account = self.resolve(token)
        imported = import_xml(document)
        if scope == "personal":
            kb = self._personal_kb(account.name)
            for element in imported:
                kb.store(element, as_user=account.name)
        elif scope == "shared":
            if not account.is_admin:
                raise AccessError("importing into the shared base needs an admin")
            for element in imported:
                self.shared.store(replace(element, published=True))
        else:
            raise ValidationError(f"unknown scope {scope!r}")
        return {"imported": [e.id for e in imported], "scope": scope}

    # -- projects and tasks --------------------------------------------------------

    def _tasks_file(self) -> Path:
        return self.data / "tasks.json"

    def _projects_file(self) -> Path:
        return self.data / "projects.json"

    def _load_tasks(self) -> None:
        path = self._tasks_file()
        if path.exists():
            raw = json.loads(path.read_text(encoding="utf-8"))
            self._tasks = {t["id"]: _task_from_json(t) for t in raw.get("tasks", ())}

    def _save_tasks(self) -> None:
        _write_json_atomic(
            self._tasks_file(),
            {"tasks": [_task_to_json(t) for t in self._tasks.values()]},
        )

    def _load_projects(self) -> None:
        path = self._projects_file()
        if path.exists():
            raw = json.loads(path.read_text(encoding="utf-8"))
            self._projects = {
                p["id"]: Project(p["id"], p.get("title", "")) for p in raw.get("projects", ())
            }

    def _save_projects(self) -> None:
        _write_json_atomic(
            self._projects_file(),
            {
                "projects": [
                    {"id": p.id, "title": p.title} for p in self._projects.values()
                ]
            },
        )

    def add_project(self, token: str, project_id: str, title: str = "") -> dict[str, Any]:
        self.resolve(token)
        with self._lock:
            if project_id in self._projects:
                raise ConflictError(f"project {project_id} already exists")
            self._projects[project_id] = Project(project_id, title)
            self._save_projects()
        return {"id": project_id, "title": title}

    def list_projects(self, token: str) -> list[dict[str, Any]]:
        self.resolve(token)
        with self._lock:
            return [
                {"id": p.id, "title": p.title}
                for p in sorted(self._projects.values(), key=lambda p: p.id)
            ]

    def import_tasks(self, token: str, document: str) -> dict[str, Any]:
        self.resolve(token)
        tasks = import_tasks_xml(document)
        with self._lock:
            clashes = [t.id for t in tasks if t.id in self._tasks]
            if clashes:
                raise ConflictError(f"tasks already exist: {', '.join(clashes)}")
            for task in tasks:
                self._tasks[task.id] = task
                if task.project and task.project not in self._projects:
                    self._projects[task.project] = Project(task.project, task.project)
            self._save_tasks()
            self._save_projects()
        return {"imported": [t.id for t in tasks]}

    def export_tasks(self, token: str, project: str | None = None) -> str:
        self.resolve(token)
        with self._lock:
            tasks = [
                t
                for t in self._tasks.values()
                if project is None or t.project == project
            ]
        return export_tasks_xml(tasks)

    def list_tasks(self, token: str, project: str | None = None) -> list[dict[str, Any]]:
        self.resolve(token)
        with self._lock:
            return [
                _task_to_json(t)
                for t in sorted(self._tasks.values(), key=lambda t: t.id)
                if project is None or t.project == project
            ]

    def _task(self, task_id: str) -> DesignTask:
        task = self._tasks.get(task_id)
        if task is None:
            raise NotFoundError(f"no task {task_id}")
        return task

    def get_task(self, token: str, task_id: str) -> dict[str, Any]:
        self.resolve(token)
        with self._lock:
            return _task_to_json(self._task(task_id))

    def task_events(self, token: str, task_id: str) -> list[str]:
        self.resolve(token)
        with self._lock:
            return [e.value for e in offered_events(self._task(task_id).state)]

    def step_task(self, token: str, task_id: str, event: str) -> dict[str, Any]:
        self.resolve(token)
        with self._lock:
            updated = task_step(self._task(task_id), event, when=self.clock())
            self._tasks[task_id] = updated
            self._save_tasks()
            return _task_to_json(updated)

    def add_solution(self, token: str, task_id: str, element_id: str, note: str = "") -> dict[str, Any]:
        self.resolve(token)
        with self._lock:
            updated = record_solution(self._task(task_id), element_id, note)
            self._tasks[task_id] = updated
            self._save_tasks()
            return _task_to_json(updated)

    # -- working situations ----------------------------------------------------

    def open_situation(
        self,
        token: str,
        project: str,
        task: str,
        *,
        place: str = "",
        resources: list[str] | None = None,
    ) -> dict[str, Any]:
        account = self.resolve(token)
        situation = self.situations.open(
            account.name, project, task, place=place, resources=tuple(resources or ())
        )
        return {
            "id": situation.id,
            "user": situation.user,
            "project": situation.project,
            "task": situation.task,
            "place": situation.place,
            "resources": list(situation.resources),
        }

    def close_situation(self, token: str) -> dict[str, Any]:
        account = self.resolve(token)
        closed = self.situations.close(account.name)
        return {"closed": closed.id if closed else None}

    def active_situation(self, token: str) -> dict[str, Any] | None:
        account = self.resolve(token)
        situation = self.situations.active(account.name)
        if situation is None:
            return None
        return {
            "id": situation.id,
            "project": situation.project,
            "task": situation.task,
            "place": situation.place,
            "resources": list(situation.resources),
        }

    # -- agent directory ---------------------------------------------------------

    def agents_listing(self, token: str) -> list[dict[str, Any]]:
        self.resolve(token)
        return [
            {
                "agent_id": e.agent_id,
                "owner": e.owner,
                "status": e.status,
                "last_heartbeat": e.last_heartbeat.isoformat(),
            }
            for e in self.directory.listing()
        ]

    def labels(self) -> dict[str, dict[int, str]]:
        return label_table()

    # -- lifecycle ---------------------------------------------------------------

    def close(self) -> None:
        with self._lock:
            if self.closed:
                return
            self.closed = True
            agents = list(self._agents.values())
        for agent in agents:
            agent.stop()
        for kb in self._personal.values():
            kb.close()
        self.shared.close()
