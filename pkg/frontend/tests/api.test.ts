import { describe, expect, it } from "vitest";

import { ApiError, parseError } from "../src/api.js";
import { fixtures } from "./fixtures.js";

describe("error envelope parsing", () => {
  it("maps each recorded failure to a typed ApiError", () => {
    const recorded = fixtures.errors();

    const auth = parseError(recorded.auth.status, recorded.auth.body);
    expect(auth).toBeInstanceOf(ApiError);
    expect(auth.status).toBe(401);
    expect(auth.kind).toBe("AuthError");
    expect(auth.isAuth).toBe(true);

    const transition = parseError(recorded.transition.status, recorded.transition.body);
    expect(transition.status).toBe(409);
    expect(transition.kind).toBe("TransitionError");
    expect(transition.isAuth).toBe(false);
    expect(transition.message).toContain("Solved");

    const validation = parseError(recorded.validation.status, recorded.validation.body);
    expect(validation.status).toBe(422);
    expect(validation.kind).toBe("ValidationError");
  });

  it("degrades gracefully on a non-envelope body", () => {
    const err = parseError(502, "<html>bad gateway</html>");
    expect(err.kind).toBe("HttpError");
    expect(err.message).toBe("HTTP 502");
    const nullBody = parseError(500, null);
    expect(nullBody.kind).toBe("HttpError");
  });
});
