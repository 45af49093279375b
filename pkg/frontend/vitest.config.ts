import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    unstubGlobals: true,
    include: ["tests/**/*.test.ts"],
  },
});
