"""Command line front end.

Exit codes: 0 success, 2 bad input (validation, parse, usage), 3 domain
refusal (not found, conflicts, auth), 1 transport or unexpected failure.

`scenario run` replays a line-oriented script of CLI commands against
one backend session, so a whole working session can be captured in a
file and repeated. Lines starting with # are comments; file arguments
resolve relative to the script.
"""

from __future__ import annotations

import json
import shlex
import sys
import threading
from pathlib import Path

import click

from .client import EmbeddedBackend, RemoteBackend
from .errors import KnohubError, ParseError, ServerUnavailable, ValidationError
from .server import Hub, ServerConfig, create_app, load_config
from .store import import_xml

DIMENSION_NAMES = ("explicitness", "novelty", "importance", "usability")


class CliState:
    def __init__(self, server: str | None, data_dir: str | None, session_file: str | None) -> None:
        self.server = server
        self.data_dir = data_dir
        self.session_file = Path(session_file).expanduser() if session_file else None
        self.base_dir: Path | None = None
        self._backend = None

    def backend(self):
        if self._backend is None:
            if self.server:
                self._backend = RemoteBackend(self.server, token=self._saved_token())
            else:
                hub = Hub(ServerConfig(data_dir=self.data_dir or "knohub-data"))
                self._backend = EmbeddedBackend(hub, owns_hub=True)
        return self._backend

    def _saved_token(self) -> str | None:
        if self.session_file is None or not self.session_file.exists():
            return None
        saved = json.loads(self.session_file.read_text(encoding="utf-8"))
        return saved.get("token") if saved.get("server") == self.server else None

    def save_token(self, token: str | None) -> None:
        # Tokens only survive the process for remote servers; an embedded
        # hub's sessions die with it.
        if self.session_file is None or not self.server:
            return
        self.session_file.write_text(
            json.dumps({"server": self.server, "token": token}), encoding="utf-8"
        )

    def resolve(self, path: str) -> Path:
        candidate = Path(path)
        if candidate.is_absolute() or self.base_dir is None:
            return candidate
        return self.base_dir / candidate

    def close(self) -> None:
        if self._backend is not None:
            self._backend.close()
            self._backend = None


@click.group()
@click.option("--server", envvar="KNOHUB_SERVER", default=None, metavar="URL",
              help="Base URL of a running server; omit to run an embedded hub.")
@click.option("--data", "data_dir", envvar="KNOHUB_DATA_DIR", default=None, metavar="DIR",
              help="Embedded hub data directory (default knohub-data).")
@click.option("--session", "session_file", envvar="KNOHUB_SESSION", default=None, metavar="FILE",
              help="Where to keep the login token between invocations.")
@click.pass_context
def cli(ctx: click.Context, server: str | None, data_dir: str | None, session_file: str | None) -> None:
    if ctx.obj is None:  # a scenario re-enters here with the state already built
        ctx.obj = CliState(server, data_dir, session_file)
        ctx.call_on_close(ctx.obj.close)


# -- server ---------------------------------------------------------------------


@cli.command()
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False), default=None,
              help="Serve a built web UI from this directory.")
@click.pass_obj
def serve(state: CliState, config_file: str | None, host: str | None, port: int | None, ui_dir: str | None) -> None:
    """Run the shared server."""
    import uvicorn

    config = load_config(config_file)
    overrides = {}
    if host:
        overrides["host"] = host
    if port:
        overrides["port"] = port
    if state.data_dir:
        overrides["data_dir"] = state.data_dir
    if overrides:
        from dataclasses import replace as _replace

        config = _replace(config, **overrides)

    hub = Hub(config)
    app = create_app(hub, static_dir=ui_dir)

    stop = threading.Event()

    def ticker() -> None:
        while not stop.wait(config.heartbeat_interval):
            hub.tick_all()

    thread = threading.Thread(target=ticker, name="agent-ticker", daemon=True)
    thread.start()
    click.echo(f"serving on http://{config.bind} (data: {config.data_dir})")
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    finally:
        stop.set()
        thread.join(timeout=5)
        hub.close()


# -- sessions and accounts ---------------------------------------------------------


@cli.command()
@click.argument("user")
@click.argument("password", required=False)
@click.pass_obj
def login(state: CliState, user: str, password: str | None) -> None:
    """Start a session as USER."""
    if password is None:
        password = click.prompt("password", hide_input=True)
    session = state.backend().login(user, password)
    state.save_token(session["token"])
    suffix = f" (team {session['team']})" if session["team"] else ""
    click.echo(f"logged in as {session['user']}{suffix}")


@cli.command()
@click.pass_obj
def logout(state: CliState) -> None:
    state.backend().logout()
    state.save_token(None)
    click.echo("logged out")


@cli.command()
@click.pass_obj
def whoami(state: CliState) -> None:
    me = state.backend().whoami()
    role = " [admin]" if me["is_admin"] else ""
    team = f" team={me['team']}" if me["team"] else ""
    click.echo(f"{me['user']}{team}{role}")


@cli.group()
def user() -> None:
    """Account management."""


@user.command("add")
@click.argument("name")
@click.option("--password", required=True)
@click.option("--team", default="")
@click.option("--admin", is_flag=True, default=False)
@click.pass_obj
def user_add(state: CliState, name: str, password: str, team: str, admin: bool) -> None:
    added = state.backend().add_user(name, password, team=team, is_admin=admin)
    click.echo(f"added user {added['name']}")


@user.command("list")
@click.pass_obj
def user_list(state: CliState) -> None:
    for account in state.backend().list_users():
        role = " [admin]" if account["is_admin"] else ""
        team = account["team"] or "-"
        click.echo(f"{account['name']}\t{team}{role}")


# -- knowledge elements ---------------------------------------------------------------


@cli.command()
@click.option("--title", required=True)
@click.option("--kind", default="")
@click.option("--keyword", "keywords", multiple=True)
@click.option("--description", default="")
@click.option("--source", default="")
@click.option("--slug", default=None, help="Name fragment for exports; derived from the title if omitted.")
@click.option("--explicitness", type=click.IntRange(1, 5), required=True)
@click.option("--novelty", type=click.IntRange(1, 5), required=True)
@click.option("--importance", type=click.IntRange(1, 5), required=True)
@click.option("--usability", type=click.IntRange(1, 5), required=True)
@click.pass_obj
def create(state: CliState, title: str, kind: str, keywords: tuple[str, ...], description: str,
           source: str, slug: str | None, explicitness: int, novelty: int, importance: int,
           usability: int) -> None:
    """Store a new knowledge element in the personal base."""
    payload = {
        "title": title,
        "kind": kind,
        "keywords": list(keywords),
        "description": description,
        "source": source,
        "content": {
            "explicitness": explicitness,
            "novelty": novelty,
            "importance": importance,
            "usability": usability,
        },
    }
    if slug:
        payload["slug"] = slug
    result = state.backend().create_element(payload)
    element = result["element"]
    click.echo(f"created {element['id']} v{element['version']}: {element['title']}")
    if not result["context_captured"]:
        click.echo("note: no working situation open; context is who/when only", err=True)


@cli.command()
@click.argument("terms", nargs=-1)
@click.option("--scope", type=click.Choice(["personal", "shared", "both"]), default="both")
@click.option("--kind", default=None)
@click.option("--published-only", is_flag=True, default=False)
@click.pass_obj
def search(state: CliState, terms: tuple[str, ...], scope: str, kind: str | None,
           published_only: bool) -> None:
    """Rank elements against search terms (tab-delimited: id score version title)."""
    payload = {"terms": list(terms), "scope": scope}
    if kind:
        payload["kind"] = kind
    if published_only:
        payload["include_unpublished"] = False
    result = state.backend().search(payload)
    if result.get("degraded"):
        click.echo("warning: shared base unreachable; personal results only", err=True)
    for hit in result["hits"]:
        element = hit["element"]
        click.echo(f"{hit['id']}\t{hit['score']}\t{element['version']}\t{element['title']}")


@cli.command()
@click.argument("element_id")
@click.option("--xml", "as_xml", is_flag=True, default=False)
@click.pass_obj
def show(state: CliState, element_id: str, as_xml: bool) -> None:
    """Print one element as JSON (or interchange XML)."""
    backend = state.backend()
    if as_xml:
        click.echo(backend.export_element(element_id), nl=False)
        return
    found = backend.get_element(element_id)
    click.echo(json.dumps(found["element"], indent=2, sort_keys=True))
    click.echo(f"scope: {found['scope']}", err=True)


@cli.command()
@click.argument("element_id")
@click.pass_obj
def publish(state: CliState, element_id: str) -> None:
    """Push a personal element into the shared base."""
    result = state.backend().publish_element(element_id)
    if result.get("queued"):
        click.echo(f"server unreachable; publish of {element_id} queued")
    elif result.get("duplicate"):
        click.echo(f"{element_id} v{result['version']} was already published")
    else:
        click.echo(f"published {element_id} v{result['version']}")


@cli.command()
@click.argument("element_id")
@click.argument("score", type=click.IntRange(1, 5))
@click.pass_obj
def evaluate(state: CliState, element_id: str, score: int) -> None:
    result = state.backend().evaluate_element(element_id, score)
    click.echo(f"{element_id} ranking is now {result['ranking']}")


@cli.command()
@click.argument("element_id")
@click.pass_obj
def use(state: CliState, element_id: str) -> None:
    """Record a usage of an element under the current working situation."""
    result = state.backend().use_element(element_id)
    click.echo(f"recorded usage of {element_id} ({result['scope']} base)")


@cli.command()
@click.argument("parent_id")
@click.option("--title", default=None)
@click.option("--kind", default=None)
@click.option("--keyword", "keywords", multiple=True)
@click.option("--description", default=None)
@click.option("--source", default=None)
@click.option("--new-generation", is_flag=True, default=False,
              help="Bump the major version instead of the minor one.")
@click.pass_obj
def derive(state: CliState, parent_id: str, title: str | None, kind: str | None,
           keywords: tuple[str, ...], description: str | None, source: str | None,
           new_generation: bool) -> None:
    """Create a new version of an element."""
    changes: dict = {}
    if title is not None:
        changes["title"] = title
    if kind is not None:
        changes["kind"] = kind
    if keywords:
        changes["keywords"] = list(keywords)
    if description is not None:
        changes["description"] = description
    if source is not None:
        changes["source"] = source
    result = state.backend().derive_element(
        {"parent_id": parent_id, "changes": changes, "new_generation": new_generation}
    )
    element = result["element"]
    click.echo(f"derived {element['id']} v{element['version']} from {parent_id}")


@cli.command()
@click.argument("element_id")
@click.option("--scope", type=click.Choice(["personal", "shared"]), default="personal")
@click.pass_obj
def delete(state: CliState, element_id: str, scope: str) -> None:
    """Logically delete an element (it stays on disk, hidden from search)."""
    state.backend().delete_element(element_id, scope=scope)
    click.echo(f"deleted {element_id} from the {scope} base")


# -- knowledge base interchange ----------------------------------------------------


@cli.group()
def kb() -> None:
    """Whole-base import and export."""


@kb.command("export")
@click.option("--scope", type=click.Choice(["personal", "shared"]), default="personal")
@click.option("-o", "--out", "out_file", default=None)
@click.pass_obj
def kb_export(state: CliState, scope: str, out_file: str | None) -> None:
    document = state.backend().export_elements(scope)
    if out_file:
        path = state.resolve(out_file)
        path.write_text(document, encoding="utf-8")
        click.echo(f"wrote {path}")
    else:
        click.echo(document, nl=False)


@kb.command("import")
@click.argument("file", type=str)
@click.option("--scope", type=click.Choice(["personal", "shared"]), default="personal")
@click.pass_obj
def kb_import(state: CliState, file: str, scope: str) -> None:
    path = state.resolve(file)
    if not path.exists():
        raise ValidationError(f"no such file: {path}")
    result = state.backend().import_elements(path.read_text(encoding="utf-8"), scope)
    click.echo(f"imported {len(result['imported'])} element(s) into the {scope} base")


# -- projects, tasks, situations ------------------------------------------------------


@cli.group()
def project() -> None:
    """Design projects."""


@project.command("create")
@click.argument("project_id")
@click.option("--title", default="")
@click.pass_obj
def project_create(state: CliState, project_id: str, title: str) -> None:
    added = state.backend().add_project(project_id, title)
    click.echo(f"created project {added['id']}")


@project.command("list")
@click.pass_obj
def project_list(state: CliState) -> None:
    for item in state.backend().list_projects():
        click.echo(f"{item['id']}\t{item['title']}")


@cli.group()
def task() -> None:
    """Design task workflow."""


@task.command("import")
@click.argument("file", type=str)
@click.pass_obj
def task_import(state: CliState, file: str) -> None:
    path = state.resolve(file)
    if not path.exists():
        raise ValidationError(f"no such file: {path}")
    result = state.backend().import_tasks(path.read_text(encoding="utf-8"))
    click.echo(f"imported task(s): {', '.join(result['imported'])}")


@task.command("export")
@click.option("--project", "project_id", default=None)
@click.option("-o", "--out", "out_file", default=None)
@click.pass_obj
def task_export(state: CliState, project_id: str | None, out_file: str | None) -> None:
    document = state.backend().export_tasks(project=project_id)
    if out_file:
        path = state.resolve(out_file)
        path.write_text(document, encoding="utf-8")
        click.echo(f"wrote {path}")
    else:
        click.echo(document, nl=False)


@task.command("list")
@click.option("--project", "project_id", default=None)
@click.pass_obj
def task_list(state: CliState, project_id: str | None) -> None:
    for item in state.backend().list_tasks(project=project_id):
        click.echo(f"{item['id']}\t{item['state']}\t{item['title']}")


@task.command("show")
@click.argument("task_id")
@click.pass_obj
def task_show(state: CliState, task_id: str) -> None:
    item = state.backend().get_task(task_id)
    click.echo(f"{item['id']}: {item['title']} [{item['state']}] project={item['project']}")
    for solution in item["partial_solutions"]:
        note = f" — {solution['note']}" if solution["note"] else ""
        click.echo(f"  solution: element {solution['element_id']}{note}")
    for entry in item["history"]:
        click.echo(f"  {entry['timestamp']}  {entry['event']} -> {entry['state']}")


@task.command("events")
@click.argument("task_id")
@click.pass_obj
def task_events(state: CliState, task_id: str) -> None:
    offered = state.backend().task_events(task_id)
    click.echo(", ".join(offered) if offered else "(terminal)")


@task.command("step")
@click.argument("task_id")
@click.argument("event")
@click.pass_obj
def task_step_cmd(state: CliState, task_id: str, event: str) -> None:
    stepped = state.backend().step_task(task_id, event)
    click.echo(f"{task_id}: {event} -> {stepped['state']}")


@task.command("solution")
@click.argument("task_id")
@click.argument("element_id")
@click.option("--note", default="")
@click.pass_obj
def task_solution(state: CliState, task_id: str, element_id: str, note: str) -> None:
    state.backend().add_solution(task_id, element_id, note)
    click.echo(f"recorded element {element_id} as a solution for {task_id}")


@cli.group()
def situation() -> None:
    """Working situation (feeds captured context)."""


@situation.command("open")
@click.argument("project_id")
@click.argument("task_id")
@click.option("--place", default="")
@click.option("--resource", "resources", multiple=True)
@click.pass_obj
def situation_open(state: CliState, project_id: str, task_id: str, place: str,
                   resources: tuple[str, ...]) -> None:
    opened = state.backend().open_situation(
        project_id, task_id, place=place, resources=list(resources)
    )
    click.echo(f"opened {opened['id']}: project {project_id}, task {task_id}")


@situation.command("close")
@click.pass_obj
def situation_close(state: CliState) -> None:
    closed = state.backend().close_situation()
    click.echo(f"closed {closed['closed']}" if closed["closed"] else "no open situation")


@situation.command("show")
@click.pass_obj
def situation_show(state: CliState) -> None:
    active = state.backend().active_situation()
    if active is None:
        click.echo("no open situation")
    else:
        click.echo(f"{active['id']}: project {active['project']}, task {active['task']}")


# -- directory, metadata, reporting ---------------------------------------------------


@cli.command()
@click.pass_obj
def agents(state: CliState) -> None:
    """List known knowledge agents and their liveness."""
    for entry in state.backend().agents_listing():
        click.echo(f"{entry['agent_id']}\t{entry['status']}\t{entry['last_heartbeat']}")


@cli.command()
@click.argument("terms", nargs=-1, required=True)
@click.pass_obj
def peers(state: CliState, terms: tuple[str, ...]) -> None:
    """Ask other online agents what they can offer for the terms."""
    answer = state.backend().peer_query(list(terms))
    if not answer["peers"]:
        click.echo("no online peer has matching elements")
    for peer in answer["peers"]:
        click.echo(f"{peer['owner']}: {', '.join(peer['element_ids'])}")


@cli.command()
@click.pass_obj
def labels(state: CliState) -> None:
    """Print the content dimension label table."""
    table = state.backend().labels()
    for dimension in DIMENSION_NAMES:
        scale = {int(k): v for k, v in table[dimension].items()}  # JSON stringifies keys
        row = ", ".join(f"{degree}={scale[degree]}" for degree in range(1, 6))
        click.echo(f"{dimension}: {row}")


@cli.command()
@click.option("--scope", type=click.Choice(["personal", "shared"]), default="shared")
@click.option("--out", "out_dir", required=True)
@click.pass_obj
def report(state: CliState, scope: str, out_dir: str) -> None:
    """Render element table (CSV) and tree/network figures (PNG) to a directory."""
    from .report import render_report

    backend = state.backend()
    elements = import_xml(backend.export_elements(scope))
    tree = backend.tree_view(scope)
    network = backend.network_view(scope)
    for path in render_report(elements, tree, network, state.resolve(out_dir)):
        click.echo(f"wrote {path}")


# -- scenario scripts ---------------------------------------------------------------


@cli.group()
def scenario() -> None:
    """Scripted CLI sessions."""


@scenario.command("run")
@click.argument("script", type=click.Path(exists=True, dir_okay=False))
@click.option("--echo/--no-echo", default=True, help="Print each command before it runs.")
@click.pass_obj
def scenario_run(state: CliState, script: str, echo: bool) -> None:
    path = Path(script)
    state.base_dir = path.parent.resolve()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if echo:
            click.echo(f"> {line}")
        try:
            cli.main(args=shlex.split(line), standalone_mode=False, obj=state)
        except click.UsageError as err:
            raise ValidationError(f"{path.name}:{lineno}: {err.format_message()}") from err
        except KnohubError as err:
            raise type(err)(f"{path.name}:{lineno}: {err}") from err
    click.echo(f"scenario {path.name} finished")


def main(argv: list[str] | None = None) -> int:
    """Console entry point with domain-aware exit codes."""
    try:
        cli.main(args=argv, standalone_mode=True)
        return 0
    except (ValidationError, ParseError) as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)
    except ServerUnavailable as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(1)
    except KnohubError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(3)


if __name__ == "__main__":
    main()
