import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // DOM tests opt in per-file with // @vitest-environment jsdom
    environment: "node",
    testTimeout: 120_000,
    hookTimeout: 60_000,
  },
});
