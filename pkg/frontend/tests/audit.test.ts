import { describe, expect, it } from "vitest";

import { AuditFormModel, contextPreview, DEGREE_MAX, DEGREE_MIN } from "../src/viewmodel/audit.js";
import { fixtures } from "./fixtures.js";

function form(): AuditFormModel {
  return new AuditFormModel(fixtures.labels());
}

describe("degree sliders", () => {
  it("clamp to the 1-5 scale", () => {
    const f = form();
    f.setDegree("novelty", 99);
    expect(f.degree("novelty")).toBe(DEGREE_MAX);
    f.setDegree("novelty", -3);
    expect(f.degree("novelty")).toBe(DEGREE_MIN);
    f.setDegree("novelty", 2.4); // drag events can land between ticks
    expect(f.degree("novelty")).toBe(2);
  });

  it("start at the scale midpoint", () => {
    expect(form().degree("importance")).toBe(3);
  });
});

describe("validation", () => {
  it("flags the empty required fields by name", () => {
    const errors = form().validate();
    expect(Object.keys(errors).sort()).toEqual(["description", "kind", "title"]);
  });

  it("passes a filled form", () => {
    const f = form();
    f.fields.title = "definition de ligne neutre";
    f.fields.kind = "Procedure";
    f.fields.description = "position de la fibre neutre";
    expect(f.validate()).toEqual({});
  });
});

describe("payload", () => {
  it("splits keywords on commas and semicolons and trims them", () => {
    const f = form();
    f.fields.keywords = "etape; formage ,  ferrure;;";
    expect(f.keywordList()).toEqual(["etape", "formage", "ferrure"]);
  });

  it("carries the degrees as typed", () => {
    const f = form();
    f.fields.title = "t";
    f.fields.kind = "k";
    f.fields.description = "d";
    f.setDegree("explicitness", 2);
    f.setDegree("usability", 4);
    const payload = f.toPayload();
    expect(payload.content).toEqual({
      explicitness: 2,
      novelty: 3,
      importance: 3,
      usability: 4,
    });
  });
});

describe("context preview", () => {
  it("mirrors the open situation", () => {
    const s = fixtures.situation();
    const preview = contextPreview({ user: "secome", team: "design" }, s);
    expect(preview.project).toBe(s.project);
    expect(preview.task).toBe(s.task);
    expect(preview.place).toBe(s.place);
    expect(preview.resources).toBe(s.resources.join(", "));
  });

  it("renders dashes with no situation open", () => {
    const preview = contextPreview({ user: "secome", team: "design" }, null);
    expect(preview.project).toBe("—");
    expect(preview.task).toBe("—");
    expect(preview.actor).toBe("secome (design)");
  });
});
